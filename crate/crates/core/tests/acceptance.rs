//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use atomforge::classify::{
    catalog_from, chord_parity_ok, forbidden_pair_present, free_points_odd_ok, group_calibration,
    is_optimal_diagram, optimal_diagrams, select_group, standard_substitution, Mode, DEFAULT_GROUP,
    REFERENCE_COUNTS,
};
use atomforge::counting::{count_atoms_pformula, count_atoms_recurrence, free_point_count};
use atomforge::enumeration::{enumerate_diagrams, optimal_profile, Colorings};
use atomforge::localmodel::{build_local_model, zero_rays, PiMultiple};
use atomforge::parallel::build_pool;
use atomforge::{build_atom, find_full_ways, ChordDiagram, Sign};

/// Relative tolerance for polynomial vs complex power, scaled by `|z|^k`.
const LOCAL_MODEL_REL_TOL: f64 = 1e-9;
const LOCAL_MODEL_SAMPLES: usize = 100;
const SAMPLE_SEED: u64 = 0x5eed;

#[rustfmt::skip]
const TABLE: [u64; 20] = [
    1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496, 35696, 140152, 568504, 2390480, 10349536,
    46206736, 211799312, 997313824, 4809701440, 23758664096,
];

static FREE_POINT_CHECKS: AtomicUsize = AtomicUsize::new(0);
static FREE_POINT_VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

/// Inline check for criterion 8.
fn check_free_points(d: &ChordDiagram) {
    FREE_POINT_CHECKS.fetch_add(1, Ordering::Relaxed);
    let expected = free_point_count(d.k(), d.chord_count()).ok();
    if expected != Some(d.free_points().len()) {
        FREE_POINT_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_exactness() -> Outcome {
    for (i, &want) in TABLE.iter().enumerate() {
        let k = i + 1;
        let want = BigUint::from(want);
        let rec = count_atoms_recurrence(k).map_err(|e| e.to_string())?;
        let pf = count_atoms_pformula(k).map_err(|e| e.to_string())?;
        ensure(rec == want && pf == want, || {
            format!("k = {k}: recurrence {rec}, p-formula {pf}, expected {want}")
        })?;
    }
    Ok("k = 1..20, both routes exact".into())
}

fn enumeration_oracle() -> Outcome {
    let mut total = 0usize;
    for k in 1..=12 {
        let mut n = 0u64;
        for d in enumerate_diagrams(k, None, Colorings::Positive) {
            check_free_points(&d);
            n += 1;
        }
        let want = count_atoms_recurrence(k).map_err(|e| e.to_string())?;
        ensure(BigUint::from(n) == want, || {
            format!("k = {k}: enumerated {n}, recurrence {want}")
        })?;
        total += n as usize;
    }
    Ok(format!("k = 1..12, {total} diagrams, N_12 = 140152"))
}

fn classification_counts() -> Outcome {
    let pool = build_pool(Some(1)).map_err(|e| e.to_string())?;
    pool.install(|| {
        let mut lines = Vec::new();
        let mut mismatches = Vec::new();
        for &(genus, atoms, fatoms) in &REFERENCE_COUNTS {
            let optimal = optimal_diagrams(genus, true).map_err(|e| e.to_string())?;
            optimal.iter().for_each(check_free_points);
            let a = catalog_from(genus, true, Mode::Atom, DEFAULT_GROUP, &optimal).count;
            let f = catalog_from(genus, true, Mode::FAtom, DEFAULT_GROUP, &optimal).count;
            lines.push(format!("g{genus} {a}/{f}"));
            if a != atoms {
                mismatches.push(format!("genus {genus} atoms: got {a}, expected {atoms}"));
            }
            if f != fatoms {
                mismatches.push(format!("genus {genus} f-atoms: got {f}, expected {fatoms}"));
            }
        }
        if mismatches.is_empty() {
            return Ok(format!("{} (group {DEFAULT_GROUP})", lines.join(", ")));
        }
        let calibration = group_calibration(3).map_err(|e| e.to_string())?;
        let mut report = vec![format!(
            "{} with group {DEFAULT_GROUP}; no group variant reproduces all six counts",
            mismatches.join("; ")
        )];
        for c in &calibration {
            let counts: Vec<String> = c
                .counts
                .iter()
                .map(|(g, a, f)| format!("g{g} {a}/{f}"))
                .collect();
            report.push(format!(
                "    group {:<10} {}  ({}/{} reference values)",
                c.group.to_string(),
                counts.join(", "),
                c.matched,
                c.total
            ));
        }
        report.push(format!(
            "    selected group: {}",
            select_group(&calibration).map_or("none".into(), |g| g.to_string())
        ));
        Err(report.join("\n"))
    })
}

fn surface_oracle() -> Outcome {
    let mut checked = 0;
    for k in 1..=9 {
        for d in common::all_diagrams(k) {
            check_free_points(&d);
            let oracle = common::atom_counts(&d);
            let inv = build_atom(&d).invariants();
            let chi = 1 - d.chord_count() as i64;
            let opposite = d.chords().iter().all(|&(a, b)| (a + b) % 2 == 1);
            ensure(
                oracle.euler() == chi
                    && inv.euler_characteristic == chi
                    && oracle.orientable == opposite
                    && inv.orientable == opposite
                    && inv.boundary_components == oracle.boundary,
                || format!("{d}: library {inv:?}, oracle {oracle:?}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} diagrams (both colourings), k = 1..9"))
}

fn optimal_by_invariants(d: &ChordDiagram, genus: usize) -> bool {
    build_atom(d).close_up().is_ok_and(|closed| {
        let inv = closed.invariants();
        inv.orientable && inv.boundary_components == 1 && inv.genus() == Some(genus as u64)
    })
}

fn criteria_bridge() -> Outcome {
    let mut summary = Vec::new();
    for genus in 1..=3 {
        let (k, chords) = optimal_profile(genus, true);
        let mut accepted = 0;
        let mut space = 0;
        for d in enumerate_diagrams(k, Some(chords), Colorings::Both) {
            check_free_points(&d);
            space += 1;
            let by_invariants = optimal_by_invariants(&d, genus);
            let syntactic =
                chord_parity_ok(&d) && d.free_points().len() == 2 && find_full_ways(&d).len() == 2;
            ensure(by_invariants == syntactic, || {
                format!("{d}: invariants say {by_invariants}, chord conditions say {syntactic}")
            })?;
            ensure(
                is_optimal_diagram(&d, genus, true) == Ok(by_invariants),
                || format!("{d}: is_optimal_diagram disagrees"),
            )?;
            if by_invariants {
                accepted += 1;
                ensure(!forbidden_pair_present(&d), || {
                    format!("{d}: accepted diagram has a forbidden pair")
                })?;
                ensure(free_points_odd_ok(&d), || {
                    format!("{d}: accepted diagram has an even free point")
                })?;
            }
        }
        summary.push(format!("g{genus} {accepted}/{space}"));
    }
    Ok(format!(
        "identical sets, side conditions hold: {}",
        summary.join(", ")
    ))
}

fn standard_constructions() -> Outcome {
    for genus in 1..=5 {
        let sub = standard_substitution(genus, true).map_err(|e| e.to_string())?;
        let d = ChordDiagram::from_substitution(&sub, Sign::Pos);
        ensure(is_optimal_diagram(&d, genus, true) == Ok(true), || {
            format!("genus {genus}: {d} not optimal")
        })?;
        let inv = build_atom(&d)
            .close_up()
            .map_err(|e| format!("genus {genus}: {e}"))?
            .invariants();
        ensure(
            inv.orientable && inv.genus() == Some(genus as u64) && inv.boundary_components == 1,
            || format!("genus {genus}: closed surface {inv:?}"),
        )?;
    }
    let twisted: ChordDiagram = "k=3;chords=1-3;base=pos"
        .parse()
        .map_err(|e| format!("{e}"))?;
    let generator = ChordDiagram::from_substitution(
        &standard_substitution(0, false).map_err(|e| e.to_string())?,
        Sign::Pos,
    );
    ensure(generator == twisted, || {
        format!("non-oriented generator is {generator}")
    })?;
    ensure(!build_atom(&twisted).invariants().orientable, || {
        "k=3;chords=1-3 reports orientable".into()
    })?;
    Ok("g = 1..5 oriented, non-oriented generator at g = 0".into())
}

fn local_models() -> Outcome {
    let explicit: [(usize, &[(u64, u64)]); 3] = [
        (1, &[(1, 2)]),
        (2, &[(1, 4), (3, 4)]),
        (3, &[(1, 6), (1, 2), (5, 6)]),
    ];
    for (k, rays) in explicit {
        let want: Vec<PiMultiple> = rays.iter().map(|&(p, q)| PiMultiple::new(p, q)).collect();
        ensure(zero_rays(k) == want, || {
            format!("k = {k}: rays {:?}", zero_rays(k))
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut worst: f64 = 0.0;
    for k in 1..=12 {
        let m = build_local_model(k);
        ensure(zero_rays(k).len() == k, || {
            format!("k = {k}: wrong ray count")
        })?;
        ensure(m.ray_angles().windows(2).all(|w| w[0] < w[1]), || {
            format!("k = {k}: rays not increasing")
        })?;
        for _ in 0..LOCAL_MODEL_SAMPLES {
            let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(0.0..2.0));
            let z = Complex64::new(x, y);
            let exact = z.powu(k as u32).re;
            let scale = z.norm().powi(k as i32).max(f64::MIN_POSITIVE);
            let rel = (m.evaluate(x, y) - exact).abs() / scale;
            worst = worst.max(rel);
            ensure(rel <= LOCAL_MODEL_REL_TOL, || {
                format!("k = {k} at ({x}, {y}): relative error {rel:e}")
            })?;
        }
        // sign at the bisector of each sector
        let mut bounds = vec![0.0];
        bounds.extend(m.ray_angles().iter().map(|r| r.radians()));
        bounds.push(std::f64::consts::PI);
        for (w, &sign) in bounds.windows(2).zip(m.sector_signs()) {
            let t = (w[0] + w[1]) / 2.0;
            let v = m.evaluate(t.cos(), t.sin());
            let got = if v > 0.0 { Sign::Pos } else { Sign::Neg };
            ensure(got == sign, || {
                format!("k = {k}: sector at {t} has sign {got}")
            })?;
        }
    }
    Ok(format!(
        "k = 1..12, {LOCAL_MODEL_SAMPLES} samples each, worst relative error {worst:.1e}"
    ))
}

fn free_point_formula() -> Outcome {
    let checks = FREE_POINT_CHECKS.load(Ordering::Relaxed);
    let violations = FREE_POINT_VIOLATIONS.load(Ordering::Relaxed);
    ensure(checks > 0 && violations == 0, || {
        format!("{violations} violations in {checks} diagrams")
    })?;
    Ok(format!("{checks} diagrams checked, 0 violations"))
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "count table exactness",
            budget: Duration::from_secs(1),
            run: table_exactness,
        },
        Criterion {
            id: 2,
            name: "formula vs enumeration",
            budget: Duration::from_secs(30),
            run: enumeration_oracle,
        },
        Criterion {
            id: 3,
            name: "classification counts",
            budget: Duration::from_secs(300),
            run: classification_counts,
        },
        Criterion {
            id: 4,
            name: "surface vs cell-complex oracle",
            budget: Duration::from_secs(60),
            run: surface_oracle,
        },
        Criterion {
            id: 5,
            name: "invariant vs chord criteria",
            budget: Duration::from_secs(120),
            run: criteria_bridge,
        },
        Criterion {
            id: 6,
            name: "standard constructions",
            budget: Duration::from_secs(10),
            run: standard_constructions,
        },
        Criterion {
            id: 7,
            name: "local models",
            budget: Duration::from_secs(5),
            run: local_models,
        },
        Criterion {
            id: 8,
            name: "free-point formula",
            budget: Duration::from_secs(1),
            run: free_point_formula,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            })
            .and_then(|detail| {
                let elapsed = start.elapsed();
                if elapsed > c.budget {
                    Err(format!(
                        "{detail}; took {elapsed:.2?}, budget {:?}",
                        c.budget
                    ))
                } else {
                    Ok(detail)
                }
            });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS [{}] {:<32} {elapsed:>9.2?}  {detail}", c.id, c.name),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{}] {:<32} {elapsed:>9.2?}  {reason}", c.id, c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
