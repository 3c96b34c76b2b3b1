//! End-to-end checks of the headline results. Prints one line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use boroczky::boroczky::*;
use boroczky::elliptic::*;
use boroczky::fatpoints::*;
use boroczky::field::{FieldElement, FieldSpec};
use boroczky::matrix::ExactMatrix;
use boroczky::projective::{transform_point, ProjPoint};
use boroczky::symmetry::*;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn scheme(n: usize) -> std::result::Result<(Configuration, FatPointScheme), String> {
    let c = build_config(n).map_err(err)?;
    let s = triple_point_scheme(&c).map_err(err)?;
    Ok((c, s))
}

fn triple_counts() -> Check {
    for n in 3..=24 {
        let c = build_config(n).map_err(err)?;
        let r = incidence_report(&c).map_err(err)?;
        ensure!(
            r.count(3) == triple_count_formula(n),
            "n = {n}: {} triple points, expected {}",
            r.count(3),
            triple_count_formula(n)
        );
        ensure!(
            r.anomalies().is_empty(),
            "n = {n}: point on four or more lines"
        );
    }
    Ok("n = 3..24 all match".into())
}

fn b12_headline() -> Check {
    let (c, s) = scheme(12)?;
    ensure!(s.len() == 19, "{} triple points", s.len());
    let orbits = orbit_decompose(&s.points).map_err(err)?;
    let prof = orbit_profile(&orbits);
    ensure!(
        prof == BTreeMap::from([(1, 1), (3, 4), (6, 1)]),
        "orbit profile {prof:?}"
    );
    let g = minimal_generators(&s, 8);
    ensure!(
        g.complete && g.alpha == Some(5),
        "alpha {:?}, complete {}",
        g.alpha,
        g.complete
    );
    ensure!(
        g.generator_degrees == [5, 5, 5],
        "generator degrees {:?}",
        g.generator_degrees
    );
    let u = unique_form_check(&c).map_err(err)?;
    ensure!(u.holds(), "unique form check {u:?}");
    let w = containment_witness(&s, &c.lines, &g).map_err(err)?;
    ensure!(
        w.verdict == Verdict::NotContained,
        "verdict {}",
        w.verdict.as_str()
    );
    Ok("19 points, profile 1x1 4x3 1x6, alpha 5, gens (5,5,5), dim 1, NOT_CONTAINED".into())
}

fn concurrency() -> Check {
    for n in [8, 10, 12, 14, 16, 18] {
        let c = build_config(n).map_err(err)?;
        let sweep = concurrency_sweep(&c);
        ensure!(
            sweep.holds(),
            "n = {n}: {} disagreements",
            sweep.mismatches.len()
        );
    }
    Ok("n = 8..18 even, exhaustive over triples".into())
}

fn per_line() -> Check {
    for n in (8..=24).step_by(2) {
        let c = build_config(n).map_err(err)?;
        let r = incidence_report(&c).map_err(err)?;
        for i in 0..n {
            let k = points_on_line(&c, &r, i).map_err(err)?;
            ensure!(
                Some(k) == expected_points_on_line(n, i),
                "n = {n}, line {i}: {k} points, expected {:?}",
                expected_points_on_line(n, i)
            );
            let floor = n / 3 + usize::from(n >= 14);
            ensure!(k >= floor, "n = {n}, line {i}: {k} < {floor}");
        }
    }
    Ok("even n = 8..24".into())
}

fn orbit_formulas() -> Check {
    for n in [12, 18, 24] {
        let c = build_config(n).map_err(err)?;
        let tp = incidence_report(&c).map_err(err)?.triple_points();
        let prof = orbit_profile(&orbit_decompose(&tp).map_err(err)?);
        let got = (
            prof.get(&3).copied().unwrap_or(0) as i64,
            prof.get(&6).copied().unwrap_or(0) as i64,
        );
        let want = orbit_count_formulas(n).map_err(err)?;
        ensure!(
            got == want,
            "n = {n}: (O3, O6) = {got:?}, expected {want:?}"
        );
        ensure!(
            (1 + 3 * got.0 + 6 * got.1) as usize == tp.len(),
            "n = {n}: orbit sizes do not sum to {}",
            tp.len()
        );
    }
    Ok("n = 12, 18, 24".into())
}

fn weighted_hilbert_check() -> Check {
    for d in 0..=200 {
        weighted_hilbert(d).map_err(err)?;
    }
    Ok("d = 0..200".into())
}

fn degree_bounds() -> Check {
    let mut chain = Vec::new();
    for n in [12, 18] {
        let (_, s) = scheme(n)?;
        let a = alpha(&s, 1);
        let ub = degree_bound(n).map_err(err)?;
        ensure!(n <= 3 * a && a <= ub, "n = {n}: alpha {a}, bound {ub}");
        chain.push(format!("{} <= {a} <= {ub}", n / 3));
    }
    ensure!(chain[0] == "4 <= 5 <= 5", "n = 12 chain {}", chain[0]);
    Ok(chain.join("; "))
}

fn waldschmidt() -> Check {
    let (_, s) = scheme(12)?;
    let a3 = alpha(&s, 3);
    ensure!(a3 == 12, "alpha(I^(3)) = {a3}");
    let w = waldschmidt_estimate(&s, 3);
    ensure!(w == Ratio::from_integer(BigInt::from(4)), "estimate {w}");
    Ok("min alpha(I^(m))/m = 4, alpha(I^(3)) = 12".into())
}

fn b18_generators() -> Check {
    let (_, s) = scheme(18)?;
    let g = minimal_generators(&s, 12);
    ensure!(
        g.generator_degrees == [8, 8, 8, 9],
        "generator degrees {:?}",
        g.generator_degrees
    );
    ensure!(
        g.complete,
        "generator list not certified complete up to degree {}",
        g.computed_up_to
    );
    Ok(format!(
        "(8,8,8,9), complete, saturation degree {:?}",
        g.saturation_degree
    ))
}

fn elliptic() -> Check {
    let table = generate_e6().map_err(err)?;
    let c = elliptic_config_from(table).map_err(err)?;
    c.check_statistics().map_err(err)?;
    let orbits = s3_orbit_profile(&c.triple_points()).map_err(err)?;
    let mut sizes: Vec<usize> = orbits.iter().map(|o| o.size()).collect();
    sizes.sort();
    ensure!(
        sizes == [vec![1, 2], vec![3; 7], vec![6; 4]].concat(),
        "S3 orbit sizes {sizes:?}"
    );
    check_s3_representatives(&c.triple_points(), &orbits).map_err(err)?;
    let r = elliptic_containment(&c, false).map_err(err)?;
    ensure!(
        r.witness.verdict == Verdict::NotContained,
        "verdict {}",
        r.witness.verdict.as_str()
    );
    Ok("36 cells, 18 lines, (57, 48, 0), S3 profile matches, NOT_CONTAINED".into())
}

fn small_containment() -> Check {
    let (_, s) = scheme(6)?;
    let g = minimal_generators(&s, 14);
    let r = containment_up_to_degree(&s, 12, &g).map_err(err)?;
    ensure!(r.holds(), "fails at degree {:?}", r.first_failure);
    Ok("n = 6, d <= 12".into())
}

fn random_element(f: &FieldSpec, rng: &mut ChaCha8Rng) -> FieldElement {
    let den = rng.gen_range(1i64..=9);
    let coeffs: Vec<BigRational> = (0..f.degree())
        .map(|_| BigRational::new(rng.gen_range(-20i64..=20).into(), den.into()))
        .collect();
    f.from_coefficients(&coeffs).unwrap()
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0;
    for f in [
        FieldSpec::cyclotomic(12).unwrap(),
        FieldSpec::cyclotomic(36).unwrap(),
        FieldSpec::fermat_tower(),
    ] {
        for _ in 0..50 {
            let a = random_element(&f, &mut rng);
            let b = random_element(&f, &mut rng);
            if !a.is_zero() {
                ensure!(
                    &a.inv().unwrap() * &a == f.one(),
                    "inverse round trip in {}",
                    f.label()
                );
            }
            ensure!(
                f.parse(&a.to_string()).unwrap() == a,
                "display/parse round trip in {}",
                f.label()
            );
            ensure!(&(&a + &b) - &b == a, "additive round trip in {}", f.label());
            cases += 1;
        }
    }

    let f = FieldSpec::cyclotomic(12).unwrap();
    for _ in 0..20 {
        let rows: Vec<Vec<FieldElement>> = (0..4)
            .map(|_| (0..6).map(|_| random_element(&f, &mut rng)).collect())
            .collect();
        let m = ExactMatrix::from_rows(&f, 6, rows).unwrap();
        let ns = m.nullspace();
        ensure!(ns.len() + m.rank() == 6, "rank-nullity");
        for v in &ns {
            ensure!(
                m.mul_vec(v).iter().all(|x| x.is_zero()),
                "nullspace multiply-back"
            );
        }
        cases += 1;
    }

    for _ in 0..10 {
        let pts: Vec<ProjPoint> = (0..5)
            .filter_map(|_| {
                ProjPoint::from_ints(&f, std::array::from_fn(|_| rng.gen_range(-4..=4))).ok()
            })
            .collect();
        let Ok(s) = FatPointScheme::new(&f, &pts) else {
            continue;
        };
        let a: [[FieldElement; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| f.from_int(rng.gen_range(-3..=3))));
        let m = ExactMatrix::from_rows(&f, 3, a.iter().map(|r| r.to_vec()).collect()).unwrap();
        if m.rank() < 3 {
            continue;
        }
        let moved: Vec<ProjPoint> = s.points.iter().map(|p| transform_point(&a, p)).collect();
        let t = FatPointScheme::new(&f, &moved).unwrap();
        for (mult, d) in [(1, 3), (2, 4), (3, 6)] {
            ensure!(
                symbolic_dim(&s, mult, d) == symbolic_dim(&t, mult, d),
                "chart independence, m = {mult}, d = {d}"
            );
        }
        cases += 1;
    }

    let inv = InvariantForms::new(&f);
    ensure!(
        has_alternating_sign(&inv.p).map_err(err)?,
        "p is not skew-invariant"
    );
    for n in [12, 18] {
        let c = build_config(n).map_err(err)?;
        ensure!(
            has_alternating_sign(&product_of_lines(&c.lines)).map_err(err)?,
            "n = {n}: product of lines not skew"
        );
        let inv = InvariantForms::new(&c.field);
        for g in group_elements(&c.field).map_err(err)? {
            ensure!(
                act_form(&g, &inv.u) == inv.u && act_form(&g, &inv.v) == inv.v,
                "n = {n}: u, v not invariant"
            );
        }
        cases += 1;
    }
    Ok(format!("{cases} randomized and structural cases"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("triple-point counts", triple_counts),
        ("n = 12 headline", b12_headline),
        ("concurrency criterion", concurrency),
        ("per-line counts", per_line),
        ("orbit formulas", orbit_formulas),
        ("weighted Hilbert function", weighted_hilbert_check),
        ("degree bounds", degree_bounds),
        ("Waldschmidt sampling", waldschmidt),
        ("n = 18 generators", b18_generators),
        ("elliptic suite", elliptic),
        ("small-n containment", small_containment),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} ({secs:.2} s): {detail}",
                k + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2} s): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
