import { readFileSync } from 'node:fs';
import Papa from 'papaparse';

export interface Table {
  header: string[];
  rows: string[][];
}

export function readCsv(path: string): Table {
  const text = readFileSync(path, 'utf8');
  if (text.trim() === '') throw new Error(`${path}: empty file`);
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new Error(`${path}: ${parsed.errors[0].message}`);
  }
  const data = parsed.data;
  if (data.length < 1) throw new Error(`${path}: empty file`);
  return { header: data[0], rows: data.slice(1) };
}

function columnIndex(table: Table, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column '${name}' (have: ${table.header.join(', ')})`);
  }
  return idx;
}

export function column(table: Table, name: string): string[] {
  const idx = columnIndex(table, name);
  return table.rows.map((r) => r[idx]);
}

/** Numeric column; the writer serializes missing values as "nan". */
export function numbers(table: Table, name: string): number[] {
  return column(table, name).map((v) => {
    if (v === 'nan' || v === '-nan') return NaN;
    const x = Number(v);
    if (Number.isNaN(x) && v !== 'nan') {
      throw new Error(`column '${name}': cannot parse '${v}' as a number`);
    }
    return x;
  });
}

/** Unique values in first-appearance order. */
export function distinct(table: Table, name: string): string[] {
  const seen = new Set<string>();
  const out: string[] = [];
  for (const v of column(table, name)) {
    if (!seen.has(v)) {
      seen.add(v);
      out.push(v);
    }
  }
  return out;
}

export function filterRows(table: Table, pred: (row: string[]) => boolean): Table {
  return { header: table.header, rows: table.rows.filter(pred) };
}

export function where(table: Table, name: string, value: string): Table {
  const idx = columnIndex(table, name);
  return filterRows(table, (r) => r[idx] === value);
}
