/** Parser for the canonical N-Triples text carried in workbook snapshots.
 *
 * The snapshot graph uses absolute IRIs only (no blank nodes, no prefixes),
 * one statement per line. The client parses it to seed its label and
 * comment maps; subsequent updates come from change-event deltas.
 */

import type { NodeJson, TripleJson } from "./types.js";
import { RDF_LANG_STRING, XSD_STRING } from "./types.js";

const IRIREF = '<([^\\x00-\\x20<>"{}|^`\\\\]*)>';
const STRING = '"((?:[^"\\\\\\n\\r]|\\\\.)*)"';
const LANGTAG = "@([A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*)";

const TRIPLE_RE = new RegExp(
  "^[ \\t]*" + IRIREF + "[ \\t]+" + IRIREF + "[ \\t]+" +
  "(?:" + IRIREF + "|" + STRING + "(?:" + LANGTAG + "|\\^\\^" + IRIREF + ")?)" +
  "[ \\t]*\\.[ \\t]*(?:#.*)?\\r?$"
);

const UNESCAPE_SIMPLE: Record<string, string> = {
  t: "\t",
  b: "\b",
  n: "\n",
  r: "\r",
  f: "\f",
  '"': '"',
  "'": "'",
  "\\": "\\",
};

export class NtParseError extends Error {
  constructor(message: string, readonly line: number) {
    super(`line ${line}: ${message}`);
  }
}

export function unescapeNtString(s: string, line: number): string {
  if (!s.includes("\\")) return s;
  let out = "";
  let i = 0;
  while (i < s.length) {
    const ch = s[i];
    if (ch !== "\\") {
      out += ch;
      i += 1;
      continue;
    }
    if (i + 1 >= s.length) throw new NtParseError("dangling backslash in string", line);
    const esc = s[i + 1];
    if (esc in UNESCAPE_SIMPLE) {
      out += UNESCAPE_SIMPLE[esc];
      i += 2;
    } else if (esc === "u" || esc === "U") {
      const width = esc === "u" ? 4 : 8;
      const hexpart = s.slice(i + 2, i + 2 + width);
      if (hexpart.length !== width || !/^[0-9a-fA-F]+$/.test(hexpart)) {
        throw new NtParseError(`bad \\${esc} escape in string`, line);
      }
      const code = parseInt(hexpart, 16);
      if (code > 0x10ffff) throw new NtParseError(`\\${esc} escape out of range`, line);
      out += String.fromCodePoint(code);
      i += 2 + width;
    } else {
      throw new NtParseError(`unknown escape \\${esc} in string`, line);
    }
  }
  return out;
}

export function parseNtriples(text: string): TripleJson[] {
  const triples: TripleJson[] = [];
  const lines = text.split("\n");
  for (let idx = 0; idx < lines.length; idx++) {
    const lineno = idx + 1;
    const raw = lines[idx];
    const stripped = raw.trim();
    if (!stripped || stripped.startsWith("#")) continue;
    const m = TRIPLE_RE.exec(raw);
    if (!m) throw new NtParseError("not a valid N-Triples statement", lineno);
    const [, sIri, pIri, oIri, oLex, oLang, oDt] = m;
    let object: NodeJson;
    if (oIri !== undefined) {
      object = { kind: "iri", value: unescapeNtString(oIri, lineno) };
    } else {
      const lexical = unescapeNtString(oLex, lineno);
      if (oLang !== undefined) {
        object = { kind: "literal", value: lexical, datatype: RDF_LANG_STRING, language: oLang };
      } else if (oDt !== undefined) {
        object = { kind: "literal", value: lexical, datatype: unescapeNtString(oDt, lineno) };
      } else {
        object = { kind: "literal", value: lexical, datatype: XSD_STRING };
      }
    }
    triples.push({
      s: unescapeNtString(sIri, lineno),
      p: unescapeNtString(pIri, lineno),
      o: object,
    });
  }
  return triples;
}
