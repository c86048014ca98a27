//! Acceptance gate. Prints one line per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use jammedfan::cells::{self, check_duality, derive_equations, hull3, random_instantiation, volume, PointConfig};
use jammedfan::delaunay::{analyze, curated_grams, GramMatrix};
use jammedfan::enumerate::{classify_jammed, jammed_2d, solve_profiles};
use jammedfan::fan::{canonical_code, Profile};
use jammedfan::geom::rational::{format_rat, rat, ratio};
use jammedfan::geom::{is_jammed_geometric, verify_complete, witness, Matrix3, Rat, Vec3};
use jammedfan::lattice::{
    canonical_config, difference_body, eliminate_candidate, halflattice_candidates, index_bound, negated_hull, span_lattice,
    index_verdict,
};
use jammedfan::CellType;
use num_traits::{Signed, Zero};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn set(ps: &[(u32, u32, u32, u32)]) -> BTreeSet<Profile> {
    ps.iter().map(|&(a, b, c, d)| Profile::new(a, b, c, d)).collect()
}

fn ac1() -> Check {
    let start = Instant::now();
    let asym = solve_profiles(false).profiles;
    let sym = solve_profiles(true).profiles;
    let took = start.elapsed();
    ensure(asym == set(&[(4, 0, 6, 4), (4, 1, 8, 5), (2, 3, 9, 6)]), format!("asymmetric profiles {asym:?}"))?;
    ensure(sym == set(&[(0, 6, 12, 8), (8, 0, 12, 6)]), format!("symmetric profiles {sym:?}"))?;
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(format!("3 + 2 profiles in {took:?}"))
}

fn ac2() -> Check {
    let start = Instant::now();
    let cls = classify_jammed().map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let tags: BTreeSet<CellType> = cls.types.iter().map(|t| t.type_tag).collect();
    ensure(cls.types.len() == 5 && tags.len() == 5, format!("{} types", cls.types.len()))?;
    ensure(cls.asymmetric_count() == 3 && cls.symmetric_count() == 2, "wrong symmetric split")?;
    for t in &cls.types {
        ensure(t.symmetric == t.type_tag.is_symmetric(), format!("{} symmetric flag", t.type_tag))?;
    }
    ensure(took < Duration::from_secs(60), format!("took {took:?}"))?;
    Ok(format!("5 types (3 asymmetric, 2 symmetric) in {took:?}"))
}

fn ac3() -> Check {
    let cls = classify_jammed().map_err(|e| e.to_string())?;
    for t in &cls.types {
        let w = witness(t.type_tag);
        let complete = verify_complete(&w).map_err(|e| e.to_string())?;
        ensure(complete.complete, format!("{} witness incomplete: {:?}", t.type_tag, complete.issues))?;
        let jammed = is_jammed_geometric(&w).map_err(|e| e.to_string())?;
        ensure(jammed.jammed, format!("{} witness not jammed: {:?}", t.type_tag, jammed.reason))?;
        ensure(canonical_code(&w.complex) == t.canonical_code, format!("{} code mismatch", t.type_tag))?;
    }
    Ok("all five witnesses complete, jammed, and match the census".into())
}

fn ac4() -> Check {
    for n in 3..=12 {
        let j = jammed_2d(n).map_err(|e| e.to_string())?;
        ensure(j == (n <= 4), format!("jammed_2d({n}) = {j}"))?;
    }
    Ok("jammed exactly for n in {3, 4}, n <= 12".into())
}

/// Independent face counts: facets from supporting planes through point triples,
/// lower faces as intersections of facet point sets classified by affine dimension.
fn oracle_f_vector(points: &[Vec3]) -> (usize, usize, usize) {
    let n = points.len();
    let mut facets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (&points[j] - &points[i]).cross(&(&points[k] - &points[i]));
                if normal.is_zero() {
                    continue;
                }
                let signs: Vec<Rat> = points.iter().map(|p| normal.dot(&(p - &points[i]))).collect();
                let below = signs.iter().all(|s| !s.is_positive());
                let above = signs.iter().all(|s| !s.is_negative());
                if below || above {
                    facets.insert((0..n).filter(|&m| signs[m].is_zero()).collect());
                }
            }
        }
    }
    let mut meets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let list: Vec<_> = facets.iter().cloned().collect();
    let mut frontier = list.clone();
    while let Some(f) = frontier.pop() {
        for g in &list {
            let m: BTreeSet<usize> = f.intersection(g).copied().collect();
            if !m.is_empty() && !facets.contains(&m) && meets.insert(m.clone()) {
                frontier.push(m);
            }
        }
    }
    let dim = |s: &BTreeSet<usize>| {
        let pts: Vec<Vec3> = s.iter().map(|&m| points[m].clone()).collect();
        jammedfan::geom::rational::affine_dimension(&pts)
    };
    let edges = meets.iter().filter(|s| dim(s) == 1).count();
    let vertices = meets.iter().filter(|s| dim(s) == 0).count();
    (vertices, edges, facets.len())
}

fn ac5() -> Check {
    let expected = [
        (CellType::Tetrahedron, (4, 6, 4)),
        (CellType::Octahedron, (6, 12, 8)),
        (CellType::QuadrangularPyramid, (5, 8, 5)),
        (CellType::TriangularPrism, (6, 9, 5)),
        (CellType::Parallelepiped, (8, 12, 6)),
    ];
    for (tag, f) in expected {
        let complex = witness(tag).complex;
        let system = derive_equations(&complex).map_err(|e| e.to_string())?;
        let mut configs = vec![cells::solve_cell(&system).map_err(|e| e.to_string())?];
        for seed in 0..20 {
            configs.push(random_instantiation(&system, seed).map_err(|e| e.to_string())?);
        }
        for (i, config) in configs.iter().enumerate() {
            let duality = check_duality(&complex, config).map_err(|e| e.to_string())?;
            ensure(duality.holds, format!("{tag} instantiation {i}: duality fails"))?;
            let hull = hull3(config).map_err(|e| e.to_string())?;
            ensure(hull.f_vector() == f, format!("{tag} instantiation {i}: hull f-vector {:?}", hull.f_vector()))?;
            ensure(oracle_f_vector(&config.points) == f, format!("{tag} instantiation {i}: oracle f-vector"))?;
        }
    }
    Ok("duality and f-vectors hold on canonical + 20 random instantiations per type".into())
}

fn ac6() -> Check {
    let exact = [(CellType::Parallelepiped, ratio(1, 1)), (CellType::TriangularPrism, ratio(4, 3)), (CellType::Tetrahedron, ratio(12, 5))];
    for (tag, want) in exact {
        let got = index_bound(tag).map_err(|e| e.to_string())?;
        ensure(got == want, format!("{tag} bound {}", format_rat(&got)))?;
    }
    for tag in [CellType::Octahedron, CellType::QuadrangularPyramid] {
        let got = index_bound(tag).map_err(|e| e.to_string())?;
        ensure(got < rat(2), format!("{tag} bound {}", format_rat(&got)))?;
    }
    for tag in CellType::ALL {
        let got = index_bound(tag).map_err(|e| e.to_string())?;
        ensure(got <= ratio(12, 5), format!("{tag} bound exceeds 2.4"))?;
    }
    let config = canonical_config(CellType::Tetrahedron).map_err(|e| e.to_string())?;
    let base = span_lattice(&config.points).map_err(|e| e.to_string())?;
    let t = negated_hull(&config).map_err(|e| e.to_string())?;
    let candidates = halflattice_candidates(&base);
    ensure(candidates.len() == 7, format!("{} candidates", candidates.len()))?;
    for c in &candidates {
        let w = eliminate_candidate(c, &config).map_err(|e| e.to_string())?;
        ensure(w.verify(c, &t), format!("witness for shift {} does not verify", c.coset_shift))?;
    }
    let verdict = index_verdict().map_err(|e| e.to_string())?;
    ensure(verdict.all_index_one && verdict.types.len() == 5, "verdict is not index 1 for all types")?;
    Ok("bounds 1, 4/3, 12/5 exact, others < 2; 7 tetrahedron candidates eliminated; index 1 for all".into())
}

fn ac7() -> Check {
    let unimodular = Matrix3::from_ints([[1, 2, 0], [0, 1, -3], [1, 1, -1]]);
    let scaled = Matrix3::from_ints([[2, 0, 0], [0, 3, 0], [1, 0, 5]]);
    let simplex = PointConfig::new(vec![Vec3::zero(), Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)]);
    let cube = PointConfig::new((0..8).map(|i| Vec3::from_ints(i & 1, (i >> 1) & 1, (i >> 2) & 1)).collect());
    for m in [Matrix3::identity(), unimodular, scaled] {
        let det = m.det().abs();
        for (config, factor, base_vol) in [(&simplex, 20, ratio(1, 6)), (&cube, 8, rat(1))] {
            let config = config.transformed(&m);
            let body = hull3(&config).map_err(|e| e.to_string())?;
            let own = &base_vol * &det;
            ensure(volume(&body) == own, "cell volume disagrees with determinant")?;
            let diff = difference_body(&body).map_err(|e| e.to_string())?;
            ensure(diff.volume() == rat(factor) * &own, format!("vol(D - D) = {} for volume {}", format_rat(&diff.volume()), format_rat(&own)))?;
        }
    }
    Ok("vol(D-D) = 20 vol(D) for simplices, 8 vol(D) for parallelepipeds".into())
}

fn harness_grams() -> Vec<(&'static str, GramMatrix)> {
    vec![
        ("identity", GramMatrix::identity()),
        ("fcc", GramMatrix::fcc()),
        ("bcc", GramMatrix::bcc()),
        ("a2+z", GramMatrix::hexagonal_prism()),
    ]
}

fn ac8() -> Check {
    let mut notes = Vec::new();
    for (name, gram) in harness_grams() {
        let start = Instant::now();
        let report = analyze(&gram).map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        ensure(took < Duration::from_secs(10), format!("{name} took {took:?}"))?;
        ensure(report.prop1, format!("{name}: vertex fans not jammed"))?;
        for c in &report.cells {
            ensure(c.duality_ok && c.lattice_ok && c.affine_dimension == 3, format!("{name}: {} cell fails", c.type_tag))?;
        }
        if name == "fcc" || name == "bcc" {
            ensure(report.midpoint_interior, format!("{name}: midpoint check fails"))?;
        }
        let tags: Vec<String> = report.type_counts.keys().map(ToString::to_string).collect();
        notes.push(format!("{name} [{}] {took:.1?}", tags.join(",")));
    }
    let mut seen = BTreeSet::new();
    for named in curated_grams() {
        let report = analyze(&named.gram).map_err(|e| format!("{}: {e}", named.name))?;
        ensure(report.passed, format!("curated {} fails", named.name))?;
        seen.extend(report.type_counts.keys().copied());
    }
    ensure(seen.len() == 5, format!("curated family shows only {seen:?}"))?;
    Ok(format!("{}; curated family shows all 5 types", notes.join("; ")))
}

fn ac9() -> Check {
    for (name, gram) in harness_grams() {
        let report = analyze(&gram).map_err(|e| e.to_string())?;
        // Recompute from the cell points rather than trusting the stored volumes.
        let mut sum = Rat::zero();
        for c in &report.cells {
            let hull = hull3(&PointConfig::new(c.cell.points.clone())).map_err(|e| e.to_string())?;
            sum += rat(c.cell.translation_classes as i64) * volume(&hull);
        }
        ensure(sum == rat(1) && report.volume_sum == rat(1), format!("{name}: volume sum {}", format_rat(&sum)))?;
    }
    Ok("sum of multiplicity x volume equals the covolume on every lattice".into())
}

fn ac10() -> Check {
    let bin = env!("CARGO_BIN_EXE_jammedfan");
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let status = Command::new(bin).arg("report").arg("--out").arg(dir.path()).output().map_err(|e| e.to_string())?;
        ensure(status.status.success(), format!("report exited with {:?}", status.status.code()))?;
        outputs.push(std::fs::read(dir.path().join("report.json")).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], "report.json differs between runs")?;
    Ok(format!("two runs byte-identical ({} bytes)", outputs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(msg) => println!("[PASS] {name}: {msg}"),
            Err(msg) => {
                failures += 1;
                println!("[FAIL] {name}: {msg}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
