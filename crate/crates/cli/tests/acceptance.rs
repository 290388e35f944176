//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use realtype::complex::{
    cohomology_order_mod, curve, edge_path_group, homology, torus, wedge_of_circles, Coefficients, Complex,
};
use realtype::cover::riemann_equivalence_check;
use realtype::group::{count_homs, surface_group, FiniteGroupTable, DEFAULT_BUDGET};
use realtype::kan::FinSimplicialSet;
use serde_json::Value;

type Check = Result<String, String>;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_realtype")).args(args).arg("--json").output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&out.stderr).into_owned()));
    (code, v)
}

fn expect_pass(args: &[&str]) -> Result<Value, String> {
    match cli(args) {
        (0, v) if v["status"] == "pass" && v["schema"] == 1 => Ok(v),
        (code, v) => Err(format!("{} exited {code}: {v}", args.join(" "))),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn horn_retraction() -> Check {
    let v = expect_pass(&["verify-maps", "--family", "horn-retraction", "--grid", "6", "--samples", "5"])?;
    let rows = v["instances"].as_array().cloned().unwrap_or_default();
    ensure(rows.len() == 9, || format!("{} instances, expected 9", rows.len()))?;
    for r in &rows {
        // the vertices of the horn plus the five sampled points
        let n = r["n"].as_u64().unwrap_or(0);
        let vertices = if n == 1 { 1 } else { n + 1 };
        ensure(r["algebraic_points"].as_u64() == Some(vertices + 5), || format!("sample count in {r}"))?;
    }
    let points: u64 = rows.iter().map(|r| r["grid_points"].as_u64().unwrap_or(0)).sum();
    Ok(format!("9 horns, {points} grid points and 45 algebraic points"))
}

fn pair_iso() -> Check {
    let v = expect_pass(&["verify-maps", "--family", "pair-iso", "--grid", "4"])?;
    let rows = v["instances"].as_array().cloned().unwrap_or_default();
    ensure(rows.len() == 3, || "expected n = 1, 2, 3".into())?;
    let points: u64 = rows.iter().map(|r| r["simplex_points"].as_u64().unwrap_or(0)).sum();
    Ok(format!("round trips and boundaries exact on {points} simplex points"))
}

fn contraction() -> Check {
    let v = expect_pass(&["verify-maps", "--family", "contraction", "--grid", "6"])?;
    let rows = v["instances"].as_array().map(Vec::len).unwrap_or(0);
    ensure(rows == 10, || format!("{rows} instances, expected 10"))?;
    Ok("both ends exact for all n ≤ 3 and k ≤ n".into())
}

fn functoriality() -> Check {
    let pairs = [
        ("circle_into_triangle.json", "fold_triangle.json"),
        ("rotate_circle.json", "circle_into_triangle.json"),
        ("fold_triangle.json", "swap_edge.json"),
        ("rotate_circle.json", "rotate_circle.json"),
        ("identity_triangle.json", "collapse_triangle.json"),
    ];
    for (f, g) in pairs {
        let v = expect_pass(&["adjunction", "--map", &fixture(f), "--then", &fixture(g), "--grid", "6"])?;
        ensure(v["functorial"] == true, || format!("{f} then {g}"))?;
    }
    Ok(format!("{} composable pairs, realizations well defined", pairs.len()))
}

fn h1(c: &Complex) -> Vec<u64> {
    homology(c, Coefficients::Integers).map(|h| h.degree(1).to_vec()).unwrap_or_default()
}

fn k_pi_1_shadows() -> Check {
    for g in 0..=3 {
        for d in 0..=3 {
            let rank = if d == 0 { 2 * g } else { 2 * g + d - 1 };
            let c = curve(g, d).map_err(|e| e.to_string())?;
            ensure(h1(&c) == vec![0; rank], || format!("H1(curve({g},{d})) = {:?}", h1(&c)))?;
            let ab = surface_group(g, d).abelianization();
            ensure(ab.free_rank == rank && ab.torsion.is_empty(), || format!("abelianized surface group ({g},{d}) is {ab}"))?;
        }
    }
    for n in 0..=2 {
        let c = torus(n).map_err(|e| e.to_string())?;
        ensure(h1(&c) == vec![0; 2 * n], || format!("H1(torus({n})) = {:?}", h1(&c)))?;
    }
    expect_pass(&["pi1", "--model", "curve:2,1", "--surface", "2,1"])?;
    Ok("16 curves and 3 tori".into())
}

fn riemann() -> Check {
    let models = [("wedge-2", wedge_of_circles(2)), ("torus(1)", torus(1).unwrap()), ("curve(2,0)", curve(2, 0).unwrap())];
    let mut parts = Vec::new();
    for (name, c) in &models {
        // index-2 subgroups are the kernels of the nonzero maps to Z/2
        let r2 = homology(c, Coefficients::Mod(2)).map_err(|e| e.to_string())?.betti[1];
        let expected = (1usize << r2) - 1;
        let rep = riemann_equivalence_check(c, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(rep.passed() && rep.covers == expected, || format!("{name}: {rep:?}"))?;
        parts.push(format!("{name} {} = {}", rep.covers, rep.subgroup_classes));
    }
    for (name, c) in &models {
        for k in [1, 3] {
            let rep = riemann_equivalence_check(c, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(rep.passed() && rep.objects.len() == rep.covers, || format!("{name} degree {k}: {rep:?}"))?;
        }
    }
    Ok(format!("{}; per-cover H1 agrees for k ≤ 3", parts.join(", ")))
}

fn fibrations() -> Check {
    let mut bundles = 0;
    for base in ["circle", "wedge:2"] {
        for fiber in ["point", "Z/2", "Z/3"] {
            let v = expect_pass(&["fibration-check", "--model", base, "--fiber", fiber, "--dim", "2"])?;
            bundles += v["bundles"].as_array().map(Vec::len).unwrap_or(0);
        }
        for k in ["2", "3"] {
            let v = expect_pass(&["fibration-check", "--model", base, "--cover-degree", k, "--dim", "2"])?;
            let n = v["bundles"].as_array().map(Vec::len).unwrap_or(0);
            ensure(n > 0, || format!("no degree-{k} covers of {base}"))?;
            bundles += n;
        }
    }
    let (code, v) = cli(&["fibration-check", "--kan", "circle", "--dim", "2"]);
    ensure(code == 1 && v["status"] == "fail", || format!("circle passed the Kan check: {v}"))?;
    let s1 = FinSimplicialSet::circle(2);
    let loop_label = s1.label(1, s1.nondegenerate(1)[0]);
    let witness = v["report"]["failures"].as_array().into_iter().flatten().any(|w| {
        w["n"] == 2 && w["k"] == 1 && w["faces"][0] == loop_label.as_str() && w["faces"][1].is_null() && w["faces"][2] == loop_label.as_str()
    });
    ensure(witness, || "no Λ²₁ witness with both faces the loop".into())?;
    Ok(format!("{bundles} bundles lift; circle fails at Λ²₁ with faces ({loop_label}, _, {loop_label})"))
}

fn lifting() -> Check {
    let v = expect_pass(&["covers", "--model", "circle", "--degree", "2", "--lift", &fixture("winding2.json")])?;
    let l = &v["lifting"][0];
    ensure(l["lifts"] == true && l["lifts_by_search"] == 1, || format!("winding map: {l}"))?;
    let v = expect_pass(&["covers", "--model", "circle", "--degree", "2", "--lift", &fixture("identity_circle.json")])?;
    let l = &v["lifting"][0];
    ensure(l["lifts"] == false && l["lifts_by_search"] == 0, || format!("identity: {l}"))?;
    Ok("winding twice lifts uniquely, the identity does not lift".into())
}

fn cohomology_comparison() -> Check {
    let models = [("wedge2.json", wedge_of_circles(2)), ("torus1.json", torus(1).unwrap()), ("curve20.json", curve(2, 0).unwrap())];
    for (file, c) in &models {
        let b1 = h1(c).len() as u32;
        let pi1 = edge_path_group(c, c.vertices()[0]).map_err(|e| e.to_string())?.presentation.simplify();
        for m in [2u64, 3, 4] {
            let target = format!("Z/{m}");
            let v = expect_pass(&["homcount", "--input", &fixture(file), "--target", &target, "--cohomology"])?;
            let homs = count_homs(&pi1, &FiniteGroupTable::cyclic(m as usize), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let order = cohomology_order_mod(c, 1, m).map_err(|e| e.to_string())?;
            // H1 is free of rank b1 for these models
            let oracle = m.pow(b1);
            ensure(v["homs"] == homs && homs == oracle && order == oracle.into(), || {
                format!("{file} Z/{m}: cli {} homs {homs} order {order} oracle {oracle}", v["homs"])
            })?;
        }
    }
    Ok("9 model/modulus pairs agree".into())
}

fn nerves() -> Check {
    expect_pass(&["nerve", "--model", "circle", "--cover", &fixture("circle_arcs.json")])?;
    let v = expect_pass(&["nerve", "--input", &fixture("torus1.json"), "--star"])?;
    Ok(format!("circle by 3 arcs; torus by {} stars", v["members"]))
}

fn commuting_pairs(g: &FiniteGroupTable) -> u64 {
    let n = g.order();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| g.mul(a, b) == g.mul(b, a)).count() as u64
}

fn profinite() -> Check {
    let v = expect_pass(&["probe-profinite", "--left", "surface:1,0", "--right", "abelian:2", "--targets", "all8"])?;
    let rows = v["per_target"].as_array().cloned().unwrap_or_default();
    let groups = FiniteGroupTable::all_of_order_at_most_8();
    ensure(rows.len() == groups.len(), || "target count".into())?;
    for (r, g) in rows.iter().zip(&groups) {
        let oracle = commuting_pairs(g);
        ensure(r["left"] == oracle && r["right"] == oracle, || format!("{}: {r} vs {oracle}", g.name))?;
    }
    let v = expect_pass(&["probe-profinite", "--left", "surface:1,0", "--right", "free:2", "--targets", "S3", "--expect", "distinct"])?;
    let s3 = FiniteGroupTable::symmetric(3);
    let (left, right) = (commuting_pairs(&s3), (s3.order() * s3.order()) as u64);
    ensure(v["per_target"][0]["left"] == left && v["per_target"][0]["right"] == right, || v.to_string())?;
    Ok(format!("equal on {} groups; S3 gives {left} vs {right}", groups.len()))
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Check); 11] = [
        (1, "horn retraction identity", 10, horn_retraction),
        (2, "pair isomorphism", 30, pair_iso),
        (3, "contraction endpoints", 5, contraction),
        (4, "realization functoriality", 5, functoriality),
        (5, "curve and torus H1", 20, k_pi_1_shadows),
        (6, "covers against subgroups", 60, riemann),
        (7, "subordinate lifting", 60, fibrations),
        (8, "lifting criterion", 5, lifting),
        (9, "hom counts against H^1", 10, cohomology_comparison),
        (10, "nerve homology", 10, nerves),
        (11, "profinite probe", 30, profinite),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let over = took > Duration::from_secs(limit);
        let (verdict, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {limit} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {verdict} {name} ({:.2} s): {detail}", took.as_secs_f64());
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
