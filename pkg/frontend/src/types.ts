/** JSON wire shapes spoken by the workbook server. */

export interface IriNodeJson {
  kind: "iri";
  value: string;
}

export interface LiteralNodeJson {
  kind: "literal";
  value: string;
  datatype: string;
  language?: string;
}

export type NodeJson = IriNodeJson | LiteralNodeJson;

export interface TripleJson {
  s: string;
  p: string;
  o: NodeJson;
}

export interface MintJson {
  iri: string;
  label: string | null;
}

export interface DeltaJson {
  added: TripleJson[];
  removed: TripleJson[];
  minted: MintJson[];
}

export type EditJson =
  | { op: "name_sheet"; sheet: number; name: string }
  | { op: "set_row_header"; sheet: number; row: number; text: string }
  | { op: "set_column_header"; sheet: number; col: number; text: string }
  | { op: "set_cell"; sheet: number; row: number; col: number; text: string }
  | { op: "paste_reference"; sheet: number; row: number; col: number; iri: string }
  | { op: "set_comment"; iri: string; text: string };

export interface ChangeEventJson {
  revision: number;
  kind: "edit" | "import";
  actor: string | null;
  ts: number;
  edit: EditJson | null;
  delta: DeltaJson;
}

export interface HeaderJson {
  text: string;
  node: string | null;
  origin: string;
}

export type CellValueJson =
  | { kind: "resource"; iri: string }
  | { kind: "direct"; iri: string }
  | { kind: "literal"; lexical: string; datatype: string; language: string | null };

export interface CellJson {
  text: string;
  value: CellValueJson | null;
  origin: string;
  materialized: boolean;
}

export interface SheetJson {
  name: string;
  class_iri: string | null;
  former_class: string | null;
  rows: Record<string, HeaderJson>;
  cols: Record<string, HeaderJson>;
  cells: Record<string, CellJson>;
}

export interface SnapshotJson {
  id: string;
  revision: number;
  language: string;
  reuse_by_label: boolean;
  generated_ns: string;
  sheets: SheetJson[];
  engine_ranges: Record<string, string>;
  graph: string;
  comments: Record<string, string>;
  statements: number;
}

export interface SuggestionJson {
  label: string;
  iri: string;
  comment: string | null;
}

export interface EditReceipt {
  revision: number;
  delta: DeltaJson;
}

export interface ImportReceipt {
  triples_added: number;
  labels_registered: number;
  revision: number;
}

export const RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
export const RDF_LANG_STRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
export const RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label";
export const RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment";
export const XSD_STRING = "http://www.w3.org/2001/XMLSchema#string";
export const XSD_INT = "http://www.w3.org/2001/XMLSchema#int";
export const XSD_FLOAT = "http://www.w3.org/2001/XMLSchema#float";
export const XSD_BOOLEAN = "http://www.w3.org/2001/XMLSchema#boolean";
