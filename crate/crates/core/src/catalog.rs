//! Persistent catalog of classified small graphs, one JSON line per
//! isomorphism class.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{all_graphs_up_to_iso, canonical_form_graph};
use crate::classify::{
    blowup_characterization, chromatic_number, cover_density_3, is_3_degenerate_cover,
    verify_cond1_witness, verify_cond2_witness, BlowupCharacterization, Condition1Report,
    Condition2Report, Rational,
};
use crate::embed::{verify_blowup_assignment, BlowupSpec};
use crate::graph::Graph;
use crate::io::{decode_graph6, encode_graph6};
use crate::Error;

pub const CATALOG_MAX_N: usize = 7;

/// One classified isomorphism class. Keyed by the canonical form; the
/// graph6 field decodes back to the stored representative so every witness
/// can be re-checked against it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub canonical: String,
    pub graph6: String,
    pub n: usize,
    pub edge_count: usize,
    pub chromatic: usize,
    pub degenerate: bool,
    pub density3: Rational,
    pub cond1: Condition1Report,
    pub cond2: Condition2Report,
    pub blowup: BlowupCharacterization,
    pub generated_at: String,
}

impl CatalogRecord {
    fn build(g: &Graph, timestamp: &str) -> Result<Self, Error> {
        let canonical = canonical_form_graph(g)?.to_hex();
        let report = is_3_degenerate_cover(g)?;
        let blowup = blowup_characterization(g)?;
        let density = cover_density_3(g)?;
        Ok(CatalogRecord {
            canonical,
            graph6: encode_graph6(g)?,
            n: g.n(),
            edge_count: g.edge_count(),
            chromatic: chromatic_number(g)?,
            degenerate: report.degenerate,
            density3: density.exact.expect("3-uniform classification is total"),
            cond1: report.cond1,
            cond2: report.cond2,
            blowup,
            generated_at: timestamp.to_string(),
        })
    }

    /// Decodes the stored graph and re-verifies every stored witness and
    /// the density value against it.
    pub fn verify(&self) -> Result<(), Error> {
        let g = decode_graph6(&self.graph6)?;
        let fail = |msg: &str| {
            Err(Error::Validation(format!(
                "catalog record {}: {msg}",
                self.canonical
            )))
        };
        if canonical_form_graph(&g)?.to_hex() != self.canonical {
            return fail("canonical form does not match the stored graph");
        }
        if g.n() != self.n || g.edge_count() != self.edge_count {
            return fail("vertex or edge count mismatch");
        }
        if chromatic_number(&g)? != self.chromatic {
            return fail("chromatic number mismatch");
        }
        if self.degenerate != (self.cond1.holds && self.cond2.holds) {
            return fail("degeneracy flag disagrees with the conditions");
        }
        if let Some(w) = &self.cond1.witness {
            if !verify_cond1_witness(&g, w) {
                return fail("condition-1 witness does not re-verify");
            }
        } else if self.cond1.holds && g.n() > 0 {
            return fail("condition 1 holds without a witness");
        }
        if let Some(w) = &self.cond2.witness {
            if !verify_cond2_witness(&g, w) {
                return fail("condition-2 witness does not re-verify");
            }
        } else if self.cond2.holds {
            return fail("condition 2 holds without a witness");
        }
        let s = g.n().max(1);
        if let Some(phi) = &self.blowup.c5_assignment {
            let spec = BlowupSpec::new(Graph::cycle(5), vec![1, s, s, s, s], [])?;
            if !verify_blowup_assignment(&g, &spec, phi) {
                return fail("pointed 5-cycle assignment does not re-verify");
            }
        }
        if let Some(phi) = &self.blowup.c3_assignment {
            let spec = BlowupSpec::uniform(Graph::cycle(3), s, [(0, 1)])?;
            if !verify_blowup_assignment(&g, &spec, phi) {
                return fail("matched triangle assignment does not re-verify");
            }
        }
        // the density value must be consistent with χ and degeneracy
        let expected = if self.chromatic >= 4 {
            Rational::new(self.chromatic as i64 - 2, self.chromatic as i64 - 1)
        } else if self.degenerate {
            Rational::zero()
        } else {
            Rational::new(1, 2)
        };
        if self.density3 != expected {
            return fail("density is inconsistent with χ and degeneracy");
        }
        Ok(())
    }
}

/// Classifies every isomorphism class on `1..=max_n` vertices and writes
/// them as JSON lines sorted by `(n, canonical form)`.
///
/// Records already present in the output file are kept verbatim (including
/// their timestamps), so a rerun over an existing catalog is byte-identical.
/// Returns the number of records written.
pub fn build_catalog(max_n: usize, out_path: &Path) -> Result<usize, Error> {
    if max_n > CATALOG_MAX_N {
        return Err(Error::SizeCap {
            what: "build_catalog",
            limit: CATALOG_MAX_N,
            got: max_n,
        });
    }
    let mut existing: BTreeMap<String, CatalogRecord> = BTreeMap::new();
    if out_path.exists() {
        let text = std::fs::read_to_string(out_path)?;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let record: CatalogRecord = serde_json::from_str(line)
                .map_err(|e| Error::Parse(format!("existing catalog line: {e}")))?;
            existing.insert(record.canonical.clone(), record);
        }
    }

    let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let mut records: Vec<CatalogRecord> = Vec::new();
    for n in 1..=max_n {
        let classes = all_graphs_up_to_iso(n)?;
        let classified: Result<Vec<CatalogRecord>, Error> = classes
            .par_iter()
            .map(|g| {
                let key = canonical_form_graph(g)?.to_hex();
                match existing.get(&key) {
                    Some(r) => Ok(r.clone()),
                    None => CatalogRecord::build(g, &timestamp),
                }
            })
            .collect();
        records.extend(classified?);
    }
    records.sort_by(|a, b| (a.n, &a.canonical).cmp(&(b.n, &b.canonical)));

    let mut out = Vec::new();
    for r in &records {
        serde_json::to_writer(&mut out, r)?;
        out.push(b'\n');
    }
    let mut file = std::fs::File::create(out_path)?;
    file.write_all(&out)?;
    Ok(records.len())
}
