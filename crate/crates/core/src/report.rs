//! The end-to-end report: every claim checked, with its certificates.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cell_type::CellType;
use crate::cells::{self, check_duality, derive_equations, random_instantiation};
use crate::delaunay::{curated_grams, survey, SurveyReport};
use crate::enumerate::{classify_jammed, jammed_2d, solve_profiles, Classification};
use crate::fan::{canonical_code, profile, Profile};
use crate::geom::{is_jammed_geometric, verify_complete, witness};
use crate::lattice::{index_verdict, IndexVerdict};

/// Random instantiations checked per cell type.
pub const RANDOM_INSTANTIATIONS: u64 = 20;

pub const ASYMMETRIC_PROFILES: [Profile; 3] = [Profile::new(4, 0, 6, 4), Profile::new(4, 1, 8, 5), Profile::new(2, 3, 9, 6)];
pub const SYMMETRIC_PROFILES: [Profile; 2] = [Profile::new(0, 6, 12, 8), Profile::new(8, 0, 12, 6)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub passed: bool,
    pub summary: String,
    /// Key of the supporting entry under `certificates`.
    pub certificate: String,
}

fn claim(passed: bool, summary: impl Into<String>, certificate: &str) -> Claim {
    Claim { passed, summary: summary.into(), certificate: certificate.to_string() }
}

fn failed(certificate: &str, err: impl std::fmt::Display) -> Claim {
    claim(false, format!("error: {err}"), certificate)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureEntry {
    pub type_tag: CellType,
    pub profile: Profile,
    pub symmetric: bool,
    pub canonical_code: String,
    pub witness_rays: Vec<crate::geom::Vec3>,
    pub witness_cells: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claims: BTreeMap<String, Claim>,
    /// Combinatorial description of each jammed fan with its witness rays.
    pub figure: Vec<FigureEntry>,
    pub certificates: BTreeMap<String, Value>,
    pub passed: bool,
}

fn profiles_claim(symmetric: bool, certs: &mut BTreeMap<String, Value>) -> Claim {
    let key = if symmetric { "profiles_symmetric" } else { "profiles_asymmetric" };
    let got = solve_profiles(symmetric);
    let want: BTreeSet<Profile> = if symmetric { SYMMETRIC_PROFILES.into() } else { ASYMMETRIC_PROFILES.into() };
    let listed: Vec<String> = got.profiles.iter().map(ToString::to_string).collect();
    certs.insert(key.into(), json!(got));
    claim(got.profiles == want, listed.join(" "), key)
}

fn classification_claim(cls: &Result<Classification, String>, certs: &mut BTreeMap<String, Value>) -> (Claim, Vec<FigureEntry>) {
    let cls = match cls {
        Ok(c) => c,
        Err(e) => return (failed("classification", e), Vec::new()),
    };
    let mut figure = Vec::new();
    let mut witnesses = BTreeMap::new();
    let mut all_ok = cls.types.len() == 5 && cls.asymmetric_count() == 3 && cls.symmetric_count() == 2;
    for t in &cls.types {
        let w = witness(t.type_tag);
        let complete = verify_complete(&w).map(|r| r.complete).unwrap_or(false);
        let jammed = is_jammed_geometric(&w).map(|c| c.jammed).unwrap_or(false);
        let code_ok = canonical_code(&w.complex) == t.canonical_code;
        let profile_ok = profile(&w.complex).ok() == Some(t.profile);
        all_ok &= complete && jammed && code_ok && profile_ok;
        witnesses.insert(
            t.type_tag.tag().to_string(),
            json!({"complete": complete, "jammed": jammed, "code_matches": code_ok, "fan": w}),
        );
        figure.push(FigureEntry {
            type_tag: t.type_tag,
            profile: t.profile,
            symmetric: t.symmetric,
            canonical_code: t.canonical_code.to_string(),
            witness_rays: w.rays.clone(),
            witness_cells: w.complex.cells().to_vec(),
        });
    }
    certs.insert("classification".into(), json!(cls.types));
    certs.insert("witnesses".into(), json!(witnesses));
    let tags: Vec<&str> = cls.types.iter().map(|t| t.type_tag.tag()).collect();
    let summary = format!(
        "{} jammed types ({} asymmetric, {} symmetric): {}",
        cls.types.len(),
        cls.asymmetric_count(),
        cls.symmetric_count(),
        tags.join(", ")
    );
    (claim(all_ok, summary, "classification"), figure)
}

fn duality_claim(certs: &mut BTreeMap<String, Value>) -> Claim {
    let mut per_type = BTreeMap::new();
    let mut all_ok = true;
    for tag in CellType::ALL {
        let complex = witness(tag).complex;
        let outcome = (|| -> Result<Value, cells::CellError> {
            let report = cells::cell_report(&complex)?;
            let system = derive_equations(&complex)?;
            let mut random_ok = 0;
            for seed in 0..RANDOM_INSTANTIATIONS {
                let config = random_instantiation(&system, seed)?;
                if check_duality(&complex, &config)?.holds {
                    random_ok += 1;
                }
            }
            let f = cells::hull3(&cells::PointConfig::new(report.points.clone()))?.f_vector();
            let ok = report.type_tag == tag && report.duality.holds && random_ok == RANDOM_INSTANTIATIONS && f == tag.f_vector();
            Ok(json!({
                "passed": ok,
                "f_vector": [f.0, f.1, f.2],
                "canonical_points": report.points,
                "volume": report.volume,
                "random_instantiations_passed": random_ok,
                "duality": report.duality.cone_to_face,
            }))
        })();
        let v = outcome.unwrap_or_else(|e| json!({"passed": false, "error": e.to_string()}));
        all_ok &= v["passed"] == json!(true);
        per_type.insert(tag.tag().to_string(), v);
    }
    certs.insert("cells".into(), json!(per_type));
    let summary = format!("duality holds for all five cells, canonically and under {RANDOM_INSTANTIATIONS} random instantiations each");
    claim(all_ok, if all_ok { summary } else { "duality failed for some cell".into() }, "cells")
}

fn index_claim(verdict: &Result<IndexVerdict, String>, certs: &mut BTreeMap<String, Value>) -> Claim {
    match verdict {
        Ok(v) => {
            certs.insert("index".into(), json!(v));
            let bounds: Vec<String> = v.types.iter().map(|t| format!("{} {}", t.type_tag, crate::geom::rational::format_rat(&t.bound))).collect();
            claim(v.all_index_one, format!("index 1 for every type; bounds: {}", bounds.join(", ")), "index")
        }
        Err(e) => failed("index", e),
    }
}

fn survey_claims(s: &SurveyReport, certs: &mut BTreeMap<String, Value>) -> Claim {
    certs.insert("survey".into(), json!(s));
    let prop1 = s.entries.iter().all(|e| e.report.as_ref().is_some_and(|r| r.prop1));
    let names: Vec<&str> = s.entries.iter().map(|e| e.name.as_str()).collect();
    claim(prop1 && s.passed, format!("every vertex fan is jammed on {} lattices: {}", names.len(), names.join(", ")), "survey")
}

/// Run everything.
pub fn full_report() -> VerificationReport {
    let mut certs = BTreeMap::new();
    let mut claims = BTreeMap::new();

    claims.insert("profiles_asymmetric".to_string(), profiles_claim(false, &mut certs));
    claims.insert("profiles_symmetric".to_string(), profiles_claim(true, &mut certs));

    let planar: Vec<(usize, bool)> = (3..=12).map(|n| (n, jammed_2d(n).unwrap_or(false))).collect();
    let prop2_ok = planar.iter().all(|&(n, j)| j == (n <= 4));
    certs.insert("planar".into(), json!(planar.iter().map(|(n, j)| json!({"cones": n, "jammed": j})).collect::<Vec<_>>()));
    claims.insert("prop2".to_string(), claim(prop2_ok, "planar fans with n <= 12 cones are jammed exactly for n = 3, 4", "planar"));

    let cls = classify_jammed().map_err(|e| e.to_string());
    let (thm1, figure) = classification_claim(&cls, &mut certs);
    claims.insert("thm1".to_string(), thm1);

    claims.insert("thm5_1".to_string(), duality_claim(&mut certs));
    claims.insert("thm6".to_string(), index_claim(&index_verdict().map_err(|e| e.to_string()), &mut certs));

    let s = survey(&curated_grams());
    claims.insert("prop1".to_string(), survey_claims(&s, &mut certs));

    let passed = claims.values().all(|c| c.passed);
    VerificationReport { claims, figure, certificates: certs, passed }
}

impl VerificationReport {
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("# Jammed fan verification report\n\n");
        out.push_str(&format!("Overall: **{}**\n\n", if self.passed { "PASS" } else { "FAIL" }));
        out.push_str("| claim | result | summary |\n|---|---|---|\n");
        for (k, c) in &self.claims {
            out.push_str(&format!("| {k} | {} | {} |\n", if c.passed { "pass" } else { "FAIL" }, c.summary));
        }
        out.push_str("\n## Jammed fans and their cells\n\n");
        out.push_str("| cell | profile (a3,a4,b,c) | symmetric | canonical code | index bound |\n|---|---|---|---|---|\n");
        let bounds: BTreeMap<String, String> = self
            .certificates
            .get("index")
            .and_then(|v| v["types"].as_array())
            .map(|ts| {
                ts.iter()
                    .map(|t| (t["type_tag"].as_str().unwrap_or("").to_string(), t["bound"].as_str().unwrap_or("").to_string()))
                    .collect()
            })
            .unwrap_or_default();
        for f in &self.figure {
            out.push_str(&format!(
                "| {} | {} | {} | `{}` | {} |\n",
                f.type_tag,
                f.profile,
                if f.symmetric { "yes" } else { "no" },
                f.canonical_code,
                bounds.get(f.type_tag.tag()).map(String::as_str).unwrap_or("-"),
            ));
        }
        out.push_str("\n## Witness rays\n\n");
        for f in &self.figure {
            let rays: Vec<String> = f.witness_rays.iter().map(ToString::to_string).collect();
            out.push_str(&format!("- {}: {}\n", f.type_tag, rays.join(" ")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_claim_present_and_passing() {
        let report = full_report();
        let keys: Vec<&str> = report.claims.keys().map(String::as_str).collect();
        assert_eq!(keys, ["profiles_asymmetric", "profiles_symmetric", "prop1", "prop2", "thm1", "thm5_1", "thm6"]);
        for (k, c) in &report.claims {
            assert!(c.passed, "{k}: {}", c.summary);
            assert!(report.certificates.contains_key(&c.certificate), "{k} points at a missing certificate");
        }
        let md = report.to_markdown();
        for tag in CellType::ALL {
            assert!(md.contains(&format!("| {tag} |")), "{tag} row missing");
        }
        assert!(md.contains("| tetrahedron | (4,0,6,4) | no |"));
    }
}
