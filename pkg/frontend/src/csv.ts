/**
 * Minimal strict CSV reader for the simulation exports.
 *
 * The two producers write plain comma-separated numeric tables with a fixed
 * header and no quoting, so full CSV generality is deliberately out of scope.
 * The header is validated column by column and every diagnostic names the
 * offending column.
 */

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  /** column name -> values, all rows parsed as finite numbers */
  data: Map<string, number[]>;
  rowCount: number;
}

export function parseTable(text: string, expectedColumns: string[], source = "<csv>"): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${source}: file is empty`);
  }
  const header = lines[0].split(",").map((c) => c.trim());
  for (let i = 0; i < expectedColumns.length; i++) {
    if (i >= header.length) {
      throw new SchemaError(`${source}: missing column '${expectedColumns[i]}' (header has ${header.length} columns)`);
    }
    if (header[i] !== expectedColumns[i]) {
      throw new SchemaError(
        `${source}: expected column ${i + 1} to be '${expectedColumns[i]}', found '${header[i]}'`,
      );
    }
  }
  if (header.length > expectedColumns.length) {
    throw new SchemaError(`${source}: unexpected extra column '${header[expectedColumns.length]}'`);
  }
  if (lines.length === 1) {
    throw new SchemaError(`${source}: no data rows`);
  }

  const data = new Map<string, number[]>(expectedColumns.map((c) => [c, []]));
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r].split(",");
    if (cells.length !== expectedColumns.length) {
      throw new SchemaError(`${source}: row ${r + 1} has ${cells.length} cells, expected ${expectedColumns.length}`);
    }
    for (let i = 0; i < expectedColumns.length; i++) {
      const v = Number(cells[i]);
      if (!Number.isFinite(v)) {
        throw new SchemaError(
          `${source}: row ${r + 1}, column '${expectedColumns[i]}': not a finite number: '${cells[i].trim()}'`,
        );
      }
      data.get(expectedColumns[i])!.push(v);
    }
  }
  return { columns: expectedColumns, data, rowCount: lines.length - 1 };
}
