/**
 * Typed views of the versioned pipeline exports plus load-time validation.
 * The renderer trusts nothing else: raw corpora never cross this boundary.
 */

export const SCHEMA_VERSION = 1;

export type FigureKind = "timeline" | "delta-matrix" | "partner-evolution";

export interface TimelineCircle {
  cluster: string;
  year: number;
  intra: number;
  cross: number;
  publications: number;
}

export interface TimelineLink {
  a: string;
  b: string;
  year: number;
  count: number;
  mean_z: number;
}

export interface TimelineExport {
  schema_version: number;
  kind: "timeline";
  window: [number, number];
  clusters: string[];
  circles: TimelineCircle[];
  links: TimelineLink[];
}

export interface DeltaMatrixExport {
  schema_version: number;
  kind: "delta-matrix";
  period_a: string;
  period_b: string;
  clusters: string[];
  groups: Record<string, string>;
  matrix: number[][];
  row_totals: number[];
}

export interface PartnerYear {
  year: number;
  partners: { cluster: string; count: number }[];
  tie: boolean;
}

export interface PartnerExport {
  schema_version: number;
  kind: "partner-evolution";
  focal: string;
  k: number;
  years: PartnerYear[];
  cumulative: Record<string, number>;
}

export type AnyExport = TimelineExport | DeltaMatrixExport | PartnerExport;

export class SchemaError extends Error {}

function requireFields(obj: Record<string, unknown>, fields: string[], kind: string): void {
  for (const f of fields) {
    if (!(f in obj)) {
      throw new SchemaError(`${kind} export is missing field "${f}"`);
    }
  }
}

export function validateExport(raw: unknown, expectedKind: FigureKind): AnyExport {
  if (typeof raw !== "object" || raw === null) {
    throw new SchemaError("export is not a JSON object");
  }
  const obj = raw as Record<string, unknown>;
  if (obj.schema_version !== SCHEMA_VERSION) {
    throw new SchemaError(
      `schema_version ${String(obj.schema_version)} is not supported (expected ${SCHEMA_VERSION})`,
    );
  }
  if (obj.kind !== expectedKind) {
    throw new SchemaError(`export kind "${String(obj.kind)}" does not match figure kind "${expectedKind}"`);
  }
  switch (expectedKind) {
    case "timeline":
      requireFields(obj, ["window", "clusters", "circles", "links"], expectedKind);
      return obj as unknown as TimelineExport;
    case "delta-matrix": {
      requireFields(obj, ["period_a", "period_b", "clusters", "groups", "matrix", "row_totals"], expectedKind);
      const dm = obj as unknown as DeltaMatrixExport;
      if (dm.matrix.length !== dm.clusters.length) {
        throw new SchemaError("delta-matrix rows do not match the cluster list");
      }
      for (const row of dm.matrix) {
        if (row.length !== dm.clusters.length) {
          throw new SchemaError("delta-matrix is not square");
        }
      }
      return dm;
    }
    case "partner-evolution":
      requireFields(obj, ["focal", "k", "years", "cumulative"], expectedKind);
      return obj as unknown as PartnerExport;
  }
}
