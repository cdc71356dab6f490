/** Strict parsing of the numeric CSV files breather-bench writes. */

export class InputError extends Error {}

export interface Table {
  header: string[];
  /** column-major numeric data, rows[i][j] = row i, column j */
  rows: number[][];
}

/**
 * Parse a CSV whose header must equal `expectedHeader` and whose every cell
 * must be a finite number. Throws InputError with the file name and the
 * offending line on any deviation.
 */
export function parseNumericCsv(
  name: string,
  text: string,
  expectedHeader: string[],
): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new InputError(`${name}: file is empty`);
  }
  const header = lines[0].split(",");
  if (header.join(",") !== expectedHeader.join(",")) {
    throw new InputError(
      `${name}: header is "${lines[0]}", expected "${expectedHeader.join(",")}"`,
    );
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new InputError(
        `${name}: line ${i + 1} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    const row = cells.map(Number);
    if (row.some((v) => !Number.isFinite(v))) {
      throw new InputError(`${name}: line ${i + 1} contains a non-numeric cell`);
    }
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new InputError(`${name}: no data rows`);
  }
  return { header, rows };
}

export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new InputError(`missing column ${name}`);
  }
  return table.rows.map((row) => row[idx]);
}
