/** Minimal RFC 4180 CSV reading and writing. */

export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  let row: string[] = [];
  let field = "";
  let inQuotes = false;
  let started = false;
  let i = 0;
  const endField = () => {
    row.push(field);
    field = "";
    started = false;
  };
  const endRow = () => {
    endField();
    rows.push(row);
    row = [];
  };
  while (i < text.length) {
    const ch = text[i];
    if (inQuotes) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        inQuotes = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"' && field === "") {
      inQuotes = true;
      started = true;
      i += 1;
      continue;
    }
    if (ch === ",") {
      endField();
      started = true;
      i += 1;
      continue;
    }
    if (ch === "\r") {
      i += 1;
      continue;
    }
    if (ch === "\n") {
      endRow();
      i += 1;
      continue;
    }
    field += ch;
    started = true;
    i += 1;
  }
  if (started || field !== "" || row.length > 0) {
    endRow();
  }
  return rows;
}

export function formatField(value: string, quoteAll = false): string {
  if (!quoteAll && !/[",\n\r]/.test(value)) {
    return value;
  }
  return '"' + value.replace(/"/g, '""') + '"';
}

export function toCsv(rows: string[][], quoteAll = false): string {
  return (
    rows.map((row) => row.map((f) => formatField(f, quoteAll)).join(",")).join("\n") +
    "\n"
  );
}
