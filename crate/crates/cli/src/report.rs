use std::collections::BTreeMap;

use boroczky::arrangement::{IncidenceReport, IncidentPoint};
use boroczky::boroczky::{build_config, incidence_report, triple_count_formula, Configuration};
use boroczky::elliptic::{
    check_s3_representatives, compute_e6, elliptic_config_from, elliptic_containment, generate_e6,
    s3_orbit_profile, EllipticConfig,
};
use boroczky::fatpoints::{
    alpha as alpha_of, containment_up_to_degree, containment_witness, minimal_generators,
    triple_point_scheme, FatPointScheme, IdealSummary,
};
use boroczky::field::FieldSpec;
use boroczky::projective::{ProjLine, ProjPoint};
use boroczky::symmetry::{orbit_count_formulas, orbit_decompose, orbit_profile, Orbit};
use serde_json::{json, Value};

use crate::{Artifact, Outcome, Tag};

pub fn point(p: &ProjPoint) -> Value {
    json!({ "coords": p.key() })
}

fn line(l: &ProjLine, index: usize) -> Value {
    json!({ "index": index, "coeffs": l.key() })
}

fn incident(p: &IncidentPoint) -> Value {
    json!({ "coords": p.point.key(), "multiplicity": p.multiplicity(), "lines": p.lines })
}

fn field_json(f: &FieldSpec) -> Value {
    json!({ "label": f.label(), "m": f.cyclotomic_order(), "degree": f.degree(), "generators": f.generators() })
}

fn histogram(r: &IncidenceReport) -> Value {
    let h: BTreeMap<String, usize> = r
        .histogram()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    json!(h)
}

fn sorted_points(points: &[ProjPoint]) -> Vec<Value> {
    let mut v: Vec<&ProjPoint> = points.iter().collect();
    v.sort_by_key(|p| p.key());
    v.into_iter().map(point).collect()
}

fn orbit_json(o: &Orbit) -> Value {
    let mut pts = o.points.clone();
    pts.sort_by_key(|p| p.key());
    json!({ "size": o.size(), "representative": point(&pts[0]), "points": sorted_points(&pts) })
}

fn sorted_orbits(orbits: &[Orbit]) -> Vec<Value> {
    let mut v: Vec<Value> = orbits.iter().map(orbit_json).collect();
    v.sort_by(|a, b| {
        (a["size"].as_u64(), a["representative"].to_string())
            .cmp(&(b["size"].as_u64(), b["representative"].to_string()))
    });
    v
}

fn config(n: usize) -> Outcome<(Configuration, IncidenceReport)> {
    let c = build_config(n).tag("boroczky")?;
    let r = incidence_report(&c).tag("projplane")?;
    Ok((c, r))
}

fn scheme(n: usize) -> Outcome<(Configuration, FatPointScheme)> {
    let c = build_config(n).tag("boroczky")?;
    let s = triple_point_scheme(&c).tag("fatpoints")?;
    Ok((c, s))
}

pub fn build(n: usize) -> Outcome<Artifact> {
    let (c, r) = config(n)?;
    let triple = r.count(3);
    let formula = triple_count_formula(n);
    let v = json!({
        "n": n,
        "field": field_json(&c.field),
        "lines": c.lines.iter().enumerate().map(|(i, l)| line(l, i)).collect::<Vec<_>>(),
        "tangents": c.tangent_indices(),
        "points": r.points.iter().map(incident).collect::<Vec<_>>(),
        "counts": { "triple": triple, "double": r.count(2), "higher": r.anomalies().len(), "formula": formula },
        "histogram": histogram(&r),
        "match": triple == formula && r.anomalies().is_empty(),
    });
    let mismatch = (triple != formula)
        .then(|| format!("n = {n}: {triple} triple points, closed form gives {formula}"));
    Ok(Artifact::json(v).with_mismatch(mismatch))
}

fn orbit_summary(n: usize, r: &IncidenceReport) -> Outcome<(Value, Option<String>)> {
    let orbits = orbit_decompose(&r.triple_points()).tag("symmetry")?;
    let prof = orbit_profile(&orbits);
    let count = |k: usize| prof.get(&k).copied().unwrap_or(0) as i64;
    let (o3, o6) = orbit_count_formulas(n).tag("symmetry")?;
    let matched = (count(3), count(6)) == (o3, o6) && !prof.keys().any(|k| ![1, 3, 6].contains(k));
    let v = json!({
        "orbits": sorted_orbits(&orbits),
        "formula": { "O3": o3, "O6": o6 },
        "geometric": { "O1": count(1), "O3": count(3), "O6": count(6) },
        "match": matched,
    });
    let mismatch = (!matched).then(|| {
        format!(
            "n = {n}: orbit counts {:?}, formula gives ({o3}, {o6})",
            (count(3), count(6))
        )
    });
    Ok((v, mismatch))
}

pub fn orbits(n: usize) -> Outcome<Artifact> {
    let (_, r) = config(n)?;
    let (mut v, mismatch) = orbit_summary(n, &r)?;
    v["n"] = json!(n);
    Ok(Artifact::json(v).with_mismatch(mismatch))
}

fn scheme_name(n: usize) -> String {
    format!("boroczky:{n}")
}

pub fn alpha(n: usize, m: usize) -> Outcome<Artifact> {
    let (_, s) = scheme(n)?;
    let value = alpha_of(&s, m);
    Ok(Artifact::json(
        json!({ "scheme": scheme_name(n), "points": s.len(), "alpha": { "m": m, "value": value } }),
    ))
}

fn generators_json(g: &IdealSummary) -> Value {
    let hf: BTreeMap<String, usize> = g
        .hilbert_function
        .iter()
        .map(|(d, k)| (d.to_string(), *k))
        .collect();
    json!({
        "generators": g.generator_degrees,
        "complete": g.complete,
        "computed_up_to": g.computed_up_to,
        "saturation_degree": g.saturation_degree,
        "hilbert_function": hf,
    })
}

pub fn mingens(n: usize, d_max: usize) -> Outcome<Artifact> {
    let (_, s) = scheme(n)?;
    let g = minimal_generators(&s, d_max);
    let mut v = generators_json(&g);
    v["scheme"] = json!(scheme_name(n));
    v["alpha"] = json!({ "m": 1, "value": g.alpha });
    Ok(Artifact::json(v))
}

/// Degrees up to `d - alpha` suffice for `(I^2)_d`; two more let the list certify itself complete.
fn generator_degree(d: usize, alpha: usize) -> usize {
    d.saturating_sub(alpha).max(alpha) + 2
}

pub fn witness(n: usize) -> Outcome<Artifact> {
    let (c, s) = scheme(n)?;
    let a = alpha_of(&s, 1);
    let g = minimal_generators(&s, generator_degree(n, a));
    let w = containment_witness(&s, &c.lines, &g).tag("fatpoints")?;
    Ok(Artifact::json(json!({
        "scheme": scheme_name(n),
        "alpha": { "m": 1, "value": a },
        "generators": g.generator_degrees,
        "complete": g.complete,
        "witness": {
            "form": "product of lines",
            "degree": w.degree,
            "in_symbolic3": w.in_symbolic3,
            "in_square": w.in_square,
            "verdict": w.verdict.as_str(),
        },
    })))
}

pub fn contain(n: usize, upto: usize) -> Outcome<Artifact> {
    let (_, s) = scheme(n)?;
    let a = alpha_of(&s, 1);
    let g = minimal_generators(&s, generator_degree(upto, a));
    let r = containment_up_to_degree(&s, upto, &g).tag("fatpoints")?;
    let dims: Vec<Value> = r
        .dims
        .iter()
        .map(|(d, (sym, sq))| json!({ "d": d, "symbolic3": sym, "square": sq }))
        .collect();
    Ok(Artifact::json(json!({
        "scheme": scheme_name(n),
        "upto": upto,
        "holds": r.holds(),
        "first_failure": r.first_failure,
        "dims": dims,
    })))
}

fn elliptic_body(c: &EllipticConfig, dimension: bool) -> Outcome<(Value, Vec<String>)> {
    let mut problems = Vec::new();
    let t = &c.table;
    let table: Vec<Vec<Value>> = t
        .grid
        .iter()
        .map(|row| row.iter().map(|p| point(&p.point)).collect())
        .collect();
    let tp = c.triple_points();
    let orbits = s3_orbit_profile(&tp).tag("elliptic")?;
    let sizes: BTreeMap<String, usize> = orbit_profile(&orbits)
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let reps = check_s3_representatives(&tp, &orbits);
    if let Err(e) = &reps {
        problems.push(e.to_string());
    }
    if let Err(e) = c.check_statistics() {
        problems.push(e.to_string());
    }
    let k = elliptic_containment(c, dimension).tag("elliptic")?;
    let (double_or_more, triple, higher) = c.statistics();
    let v = json!({
        "curve": "x^3 + y^3 + z^3",
        "field": field_json(&t.field),
        "torsion_table": table,
        "tangents": c.tangent_indices(),
        "raw_lines": c.raw_lines.iter().enumerate().map(|(i, l)| line(l, i)).collect::<Vec<_>>(),
        "lines": c.lines.iter().enumerate().map(|(i, l)| line(l, i)).collect::<Vec<_>>(),
        "points": c.incidence.points.iter().map(incident).collect::<Vec<_>>(),
        "counts": {
            "lines": c.lines.len(),
            "multiple": double_or_more,
            "triple": triple,
            "higher": higher,
            "triple_on_curve": c.triple_points_on_curve().len(),
        },
        "histogram": histogram(&c.incidence),
        "s3_profile": {
            "sizes": sizes,
            "orbits": sorted_orbits(&orbits),
            "representatives_match": reps.is_ok(),
        },
        "containment": {
            "alpha": k.alpha,
            "generators": k.generator_degrees,
            "symbolic3_dim": k.symbolic3_dim,
            "witness": {
                "form": "product of lines",
                "degree": k.witness.degree,
                "in_symbolic3": k.witness.in_symbolic3,
                "in_square": k.witness.in_square,
                "verdict": k.witness.verdict.as_str(),
            },
        },
    });
    Ok((v, problems))
}

pub fn elliptic(check_table: bool, dimension: bool) -> Outcome<Artifact> {
    let table = if check_table {
        generate_e6()
    } else {
        compute_e6(&FieldSpec::fermat_tower())
    }
    .tag("elliptic")?;
    let c = elliptic_config_from(table).tag("elliptic")?;
    let (mut v, problems) = elliptic_body(&c, dimension)?;
    v["checked"] = json!(check_table);
    let mismatch = (check_table && !problems.is_empty()).then(|| problems.join("; "));
    Ok(Artifact::json(v).with_mismatch(mismatch))
}

pub fn sweep(from: usize, to: usize) -> Outcome<Artifact> {
    let mut rows = Vec::new();
    let mut problems = Vec::new();
    for n in from..=to {
        let (_, r) = config(n)?;
        let triple = r.count(3);
        let formula = triple_count_formula(n);
        if triple != formula {
            problems.push(format!(
                "n = {n}: {triple} triple points, closed form gives {formula}"
            ));
        }
        let orbits = if n % 3 == 0 {
            let (mut o, m) = orbit_summary(n, &r)?;
            problems.extend(m);
            o.as_object_mut().expect("object").remove("orbits");
            o
        } else {
            Value::Null
        };
        rows.push(json!({
            "n": n,
            "triple": triple,
            "formula": formula,
            "histogram": histogram(&r),
            "match": triple == formula,
            "orbits": orbits,
        }));
    }
    let v = json!({ "from": from, "to": to, "runs": rows, "all_match": problems.is_empty() });
    Ok(Artifact::json(v).with_mismatch((!problems.is_empty()).then(|| problems.join("; "))))
}
