/** Cell text classification, mirroring the server's rules exactly.
 *
 * Priority: a leading single quote forces a literal; otherwise an http(s)
 * hyperlink is used verbatim as the resource IRI; otherwise integer, then
 * float, then true/false; anything else refers to a resource by label.
 *
 * The client never decides bindings on its own (the server's delta is the
 * authority), but replaying change events onto the local grid needs the
 * same classification the engine used.
 */

import { RDF_LANG_STRING, XSD_BOOLEAN, XSD_FLOAT, XSD_INT } from "./types.js";

const INT_RE = /^[+-]?[0-9]+$/;
const FLOAT_RE = /^[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?$/;
// \x1c-\x1f and \x85 round out the whitespace set the server excludes.
const HYPERLINK_RE = /^https?:\/\/[^\s\x1c-\x1f\x85<>"{}|^`\\]+$/;
const SCHEME_RE = /^[A-Za-z][A-Za-z0-9+.\-]*:/;
const IRI_FORBIDDEN = new Set(['<', '>', '"', '{', '}', '|', '^', '`', '\\']);
const WHITESPACE_RE = /[\s\x1c-\x1f\x85]/;

export const XSD_INT_MIN = -2147483648n;
export const XSD_INT_MAX = 2147483647n;

export type CellIntent =
  | { kind: "literal"; lexical: string; datatype: string; language: string | null }
  | { kind: "direct"; iri: string }
  | { kind: "label"; label: string };

/** Absolute-IRI check matching the server's term validation. */
export function isValidIri(value: string): boolean {
  if (!value || !SCHEME_RE.test(value)) return false;
  for (const ch of value) {
    if (WHITESPACE_RE.test(ch) || IRI_FORBIDDEN.has(ch)) return false;
  }
  return true;
}

function intValue(text: string): bigint {
  return BigInt(text.startsWith("+") ? text.slice(1) : text);
}

function inferLiteral(text: string): CellIntent | null {
  if (INT_RE.test(text)) {
    const value = intValue(text);
    if (value >= XSD_INT_MIN && value <= XSD_INT_MAX) {
      return { kind: "literal", lexical: text, datatype: XSD_INT, language: null };
    }
    // overlong digit strings fall through to the float rule
  }
  if (FLOAT_RE.test(text) || text === "INF" || text === "+INF" || text === "-INF" || text === "NaN") {
    return { kind: "literal", lexical: text, datatype: XSD_FLOAT, language: null };
  }
  if (text === "true" || text === "false") {
    return { kind: "literal", lexical: text, datatype: XSD_BOOLEAN, language: null };
  }
  return null;
}

/** Classify raw cell text; throws on empty input (callers treat "" as clear). */
export function classifyCellInput(text: string, language: string): CellIntent {
  if (text === "") throw new Error("cell input must be non-empty");
  if (text.startsWith("'")) {
    const rest = text.slice(1);
    if (rest === "") throw new Error("quoted cell input must contain text");
    return (
      inferLiteral(rest) ?? { kind: "literal", lexical: rest, datatype: RDF_LANG_STRING, language }
    );
  }
  if (HYPERLINK_RE.test(text) && isValidIri(text)) {
    return { kind: "direct", iri: text };
  }
  return inferLiteral(text) ?? { kind: "label", label: text };
}
