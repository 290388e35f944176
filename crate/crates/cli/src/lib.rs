//! Command-line front end: one subcommand per family of checks, text or
//! JSON reports, exit code 0 on pass, 1 on a failed check, 2 on bad input.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use realtype::complex::{
    adjunction_decode, barycentric_iterated, cohomology_order_mod, edge_path_group, homology, nerve, realize_map,
    star_cover, vertex_images, Coefficients, Complex, ComplexMap, CoverOfComplex, HomologyResult,
};
use realtype::cover::{covers_of_degree, lifting_criterion, riemann_equivalence_check, universal_cover_finite, CoverComplex};
use realtype::group::{
    count_homs, exact_sequence_probe, low_index_subgroups, profinite_probe, subgroups_of_index, surface_group,
    FiniteGroupTable, DEFAULT_BUDGET,
};
use realtype::kan::{from_cover, kan_check, product_projection, star_subsets, subordinate_lifting_check, FinSimplicialSet, LiftReport};
use realtype::semialg::{
    algebraic_simplex_points, contraction_homotopy, cube, cube_simplex_pair_iso, horn, horn_inclusion,
    horn_retraction, simplex, verify_identity, Chain, PiecewiseMap,
};
use realtype::{RcfNumber, Real, Q};

pub mod inputs;

#[derive(Parser, Debug)]
#[command(name = "realtype", version, about = "Exact semi-algebraic maps and desk-scale simplicial homotopy checks")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the extra algebraic sample points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// A complex from a JSON file or a built-in model name (`circle`,
/// `simplex:N`, `sphere:N`, `wedge:N`, `torus:N`, `curve:G,D`).
#[derive(Args, Debug, Clone)]
pub struct Space {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub model: Option<String>,
}

impl Space {
    fn load(&self) -> Result<Complex> {
        inputs::space(self.input.as_deref(), self.model.as_deref())
    }

    fn given(&self) -> bool {
        self.input.is_some() || self.model.is_some()
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    HornRetraction,
    PairIso,
    Contraction,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Equal,
    Distinct,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an explicit map identity exactly on a grid of the simplex.
    VerifyMaps {
        #[arg(long, value_enum)]
        family: Family,
        /// Dimension; every n ≤ 3 when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Horn or vertex index; every k ≤ n when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 6)]
        grid: u32,
        /// Extra points with irrational coordinates (horn retraction only).
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Simplicial homology with integer or Z/m coefficients.
    Homology {
        #[command(flatten)]
        space: Space,
        /// `Z` or `Z/m`.
        #[arg(long, default_value = "Z")]
        coeffs: String,
        /// Also compare with this many barycentric subdivisions.
        #[arg(long)]
        subdivide: Option<usize>,
    },
    /// Edge-path presentation of the fundamental group.
    Pi1 {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        basepoint: Option<u64>,
        /// Compare the abelianization with that of the surface group `G,D`.
        #[arg(long)]
        surface: Option<String>,
    },
    /// Connected covers of a given degree.
    Covers {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        degree: usize,
        /// Match covers with subgroup classes of the fundamental group.
        #[arg(long)]
        check_riemann: bool,
        /// Map file to lift through every cover.
        #[arg(long)]
        lift: Option<PathBuf>,
        /// Source vertex held at the chosen sheet when lifting.
        #[arg(long, default_value_t = 0)]
        source_base: u64,
        #[arg(long, default_value_t = 0)]
        sheet: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count homomorphisms into a finite group.
    Homcount {
        /// Group (`surface:G,D`, `free:N`, `<a, b | abAB>`, ...); the space's fundamental group when omitted.
        #[arg(long)]
        group: Option<String>,
        #[command(flatten)]
        space: Space,
        /// Built-in finite group such as `Z/3`, `S3`, `D4`, `Q8`, `Z/2 x Z/2`.
        #[arg(long)]
        target: String,
        /// Compare with the order of H^1(space; Z/m) for a target `Z/m`.
        #[arg(long)]
        cohomology: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Conjugacy classes of subgroups of a given index.
    LowIndex {
        #[arg(long)]
        group: Option<String>,
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Subordinate lifting for bundles over a complex, or the Kan condition.
    FibrationCheck {
        #[command(flatten)]
        space: Space,
        /// Fiber of a product bundle: `point`, `circle`, or a finite group
        /// whose nerve is the fiber.
        #[arg(long)]
        fiber: Option<String>,
        /// Check every connected cover of this degree.
        #[arg(long)]
        cover_degree: Option<usize>,
        /// Kan condition for `circle`, `point`, `delta:N`, `horn:N,K`,
        /// `nerve:<group>`.
        #[arg(long)]
        kan: Option<String>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Homology of the nerve of a cover against homology of the space.
    Nerve {
        #[command(flatten)]
        space: Space,
        /// JSON file `{"members": [[facet, ...], ...]}`.
        #[arg(long)]
        cover: Option<PathBuf>,
        /// Use the open-star cover of the barycentric subdivision.
        #[arg(long)]
        star: bool,
    },
    /// Realizations of simplicial maps and maps glued from vertex images.
    Adjunction {
        /// Complex map file; its realization is checked on a grid.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Second map, composed after the first.
        #[arg(long)]
        then: Option<PathBuf>,
        #[command(flatten)]
        space: Space,
        /// Vertex images per simplex, glued into a map to the unit cube.
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        grid: u32,
    },
    /// Search for a simply connected finite cover.
    UniversalCover {
        #[command(flatten)]
        space: Space,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Compare hom counts of two groups into finite groups.
    ProbeProfinite {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value = "all8")]
        targets: String,
        #[arg(long, value_enum, default_value_t = Expect::Equal)]
        expect: Expect,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Exactness of fiber → total → base → 1 on homomorphisms into finite
    /// groups.
    ProbeExactSeq {
        #[arg(long)]
        total: String,
        /// Comma separated words of the total group generating the fiber.
        #[arg(long)]
        fiber: String,
        #[arg(long)]
        base: String,
        /// Image in the base of each total generator, comma separated.
        #[arg(long)]
        projection: String,
        #[arg(long, default_value = "all8")]
        targets: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A report under construction: text lines, JSON fields and a verdict.
struct Report {
    command: &'static str,
    lines: Vec<String>,
    fields: Map<String, Value>,
    passed: bool,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, lines: Vec::new(), fields: Map::new(), passed: true }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn set(&mut self, key: &str, v: Value) {
        self.fields.insert(key.to_string(), v);
    }

    fn require(&mut self, ok: bool) {
        self.passed &= ok;
    }

    fn render(self, as_json: bool) -> String {
        let status = if self.passed { "pass" } else { "fail" };
        if as_json {
            let mut m = Map::new();
            m.insert("schema".into(), json!(1));
            m.insert("command".into(), json!(self.command));
            m.insert("status".into(), json!(status));
            m.extend(self.fields);
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).expect("report"))
        } else {
            let mut out = self.lines.join("\n");
            out.push_str(&format!("\nstatus: {status}\n"));
            out
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let code = if r.passed { 0 } else { 1 };
            Outcome { code, stdout: r.render(cli.json), stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e:#}\n") },
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::VerifyMaps { family, n, k, grid, samples } => verify_maps(*family, *n, *k, *grid, *samples, cli.seed),
        Command::Homology { space, coeffs, subdivide } => homology_cmd(space, coeffs, *subdivide),
        Command::Pi1 { space, basepoint, surface } => pi1(space, *basepoint, surface.as_deref()),
        Command::Covers { space, degree, check_riemann, lift, source_base, sheet, budget } => {
            covers(space, *degree, *check_riemann, lift.as_ref(), *source_base, *sheet, *budget)
        }
        Command::Homcount { group, space, target, cohomology, budget } => {
            homcount(group.as_deref(), space, target, *cohomology, *budget)
        }
        Command::LowIndex { group, space, index, budget } => low_index(group.as_deref(), space, *index, *budget),
        Command::FibrationCheck { space, fiber, cover_degree, kan, dim } => {
            fibration(space, fiber.as_deref(), *cover_degree, kan.as_deref(), *dim)
        }
        Command::Nerve { space, cover, star } => nerve_cmd(space, cover.as_ref(), *star),
        Command::Adjunction { map, then, space, assignment, grid } => {
            adjunction(map.as_ref(), then.as_ref(), space, assignment.as_ref(), *grid)
        }
        Command::UniversalCover { space, bound, budget } => universal(space, *bound, *budget),
        Command::ProbeProfinite { left, right, targets, expect, budget } => {
            probe_profinite(left, right, targets, *expect, *budget)
        }
        Command::ProbeExactSeq { total, fiber, base, projection, targets, budget } => {
            probe_exact(total, fiber, base, projection, targets, *budget)
        }
    }
}

fn point_text<C: Display>(p: &[C]) -> String {
    format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

fn point_json<C: Display>(p: &[C]) -> Value {
    json!(p.iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn instances(n: Option<usize>, k: Option<usize>, min_n: usize) -> Result<Vec<(usize, usize)>> {
    let ns: Vec<usize> = match n {
        Some(n) if n < min_n => bail!("--n must be at least {min_n}"),
        Some(n) => vec![n],
        None => (min_n..=3).collect(),
    };
    let mut out = Vec::new();
    for n in ns {
        match k {
            Some(k) if k > n => bail!("--k {k} exceeds --n {n}"),
            Some(k) => out.push((n, k)),
            None => out.extend((0..=n).map(|k| (n, k))),
        }
    }
    Ok(out)
}

fn verify_maps(family: Family, n: Option<usize>, k: Option<usize>, grid: u32, samples: usize, seed: u64) -> Result<Report> {
    if grid == 0 {
        bail!("--grid must be positive");
    }
    let mut r = Report::new("verify-maps");
    let mut rows = Vec::new();
    match family {
        Family::HornRetraction => {
            for (n, k) in instances(n, k, 1)? {
                let lam = horn::<Q>(n, k)?;
                let pi = horn_retraction::<Q>(n, k)?;
                let composite = horn_inclusion::<Q>(n, k)?.then(&pi)?;
                let on_grid = verify_identity(&composite, &PiecewiseMap::identity(lam.clone()), &lam, grid, &[]);
                let outside: Vec<Vec<Q>> = simplex::<Q>(n)
                    .grid_points(grid)
                    .into_iter()
                    .filter(|x| !pi.eval(x).and_then(|y| lam.contains(&y)).unwrap_or(false))
                    .collect();
                let zero = (0..=n).find(|&i| i != k);
                let pts = algebraic_simplex_points(n, zero, samples, seed);
                let real_lam = horn::<Real>(n, k)?;
                let on_samples = verify_identity(
                    &composite.base_change::<RcfNumber>(),
                    &PiecewiseMap::identity(real_lam.clone()),
                    &real_lam,
                    1,
                    &pts,
                );
                let ok = on_grid.passed() && outside.is_empty() && on_samples.passed();
                r.require(ok);
                let witness = on_grid
                    .failures
                    .first()
                    .map(|f| point_text(&f.point))
                    .or_else(|| outside.first().map(|p| point_text(p)))
                    .or_else(|| on_samples.failures.first().map(|f| point_text(&f.point)));
                r.line(format!(
                    "horn-retraction n={n} k={k}: {} ({} grid points, {} algebraic points)",
                    if ok { "pass" } else { "fail" },
                    on_grid.checked_points,
                    on_samples.checked_points
                ));
                if let Some(w) = &witness {
                    r.line(format!("  witness {w}"));
                }
                rows.push(json!({
                    "n": n, "k": k, "status": if ok { "pass" } else { "fail" },
                    "grid_points": on_grid.checked_points,
                    "algebraic_points": on_samples.checked_points,
                    "identity_failures": on_grid.failures.len() + on_samples.failures.len(),
                    "outside_horn": outside.len(),
                    "witness": witness,
                }));
            }
        }
        Family::PairIso => {
            if k.is_some() {
                bail!("--k does not apply to pair-iso");
            }
            for n in match n {
                Some(0) => bail!("--n must be at least 1"),
                Some(n) => vec![n],
                None => vec![1, 2, 3],
            } {
                let iso = cube_simplex_pair_iso::<Q>(n)?;
                let delta = simplex::<Q>(n);
                let cb = cube::<Q>(n);
                let back = Chain::new(vec![&iso.forward, &iso.inverse]);
                let there = Chain::new(vec![&iso.inverse, &iso.forward]);
                let r1 = verify_identity(&back, &PiecewiseMap::identity(delta.clone()), &delta, grid, &[]);
                let r2 = verify_identity(&there, &PiecewiseMap::identity(cb.clone()), &cb, grid, &[]);
                let mut boundary_failures = Vec::new();
                for x in delta.grid_points(grid) {
                    let on_delta_boundary = x.iter().any(|c| *c == Q::from_integer(0.into()));
                    let ok = match iso.forward.eval(&x) {
                        Ok(y) => {
                            let on_cube_boundary =
                                y.iter().any(|c| *c == Q::from_integer(0.into()) || *c == Q::from_integer(1.into()));
                            cb.contains(&y).unwrap_or(false) && on_cube_boundary == on_delta_boundary
                        }
                        Err(_) => false,
                    };
                    if !ok {
                        boundary_failures.push(x);
                    }
                }
                let ok = r1.passed() && r2.passed() && boundary_failures.is_empty();
                r.require(ok);
                let witness = r1
                    .failures
                    .first()
                    .map(|f| point_text(&f.point))
                    .or_else(|| r2.failures.first().map(|f| point_text(&f.point)))
                    .or_else(|| boundary_failures.first().map(|p| point_text(p)));
                r.line(format!(
                    "pair-iso n={n}: {} ({} simplex points, {} cube points)",
                    if ok { "pass" } else { "fail" },
                    r1.checked_points,
                    r2.checked_points
                ));
                if let Some(w) = &witness {
                    r.line(format!("  witness {w}"));
                }
                rows.push(json!({
                    "n": n, "status": if ok { "pass" } else { "fail" },
                    "simplex_points": r1.checked_points, "cube_points": r2.checked_points,
                    "round_trip_failures": r1.failures.len() + r2.failures.len(),
                    "boundary_failures": boundary_failures.len(),
                    "witness": witness,
                }));
            }
        }
        Family::Contraction => {
            for (n, k) in instances(n, k, 0)? {
                let h = contraction_homotopy::<Q>(n, k)?;
                let zero = Q::from_integer(0.into());
                let one = Q::from_integer(1.into());
                let vertex: Vec<Q> = (0..=n).map(|i| if i == k { one.clone() } else { zero.clone() }).collect();
                let pts = simplex::<Q>(n).grid_points(grid);
                let mut failures = Vec::new();
                for x in &pts {
                    let at = |t: &Q| {
                        let mut p = x.clone();
                        p.push(t.clone());
                        h.eval(&p).ok()
                    };
                    if at(&zero).as_ref() != Some(x) || at(&one).as_ref() != Some(&vertex) {
                        failures.push(x.clone());
                    }
                }
                let ok = failures.is_empty();
                r.require(ok);
                let witness = failures.first().map(|p| point_text(p));
                r.line(format!("contraction n={n} k={k}: {} ({} grid points)", if ok { "pass" } else { "fail" }, pts.len()));
                if let Some(w) = &witness {
                    r.line(format!("  witness {w}"));
                }
                rows.push(json!({
                    "n": n, "k": k, "status": if ok { "pass" } else { "fail" },
                    "grid_points": pts.len(), "failures": failures.len(), "witness": witness,
                }));
            }
        }
    }
    let name = match family {
        Family::HornRetraction => "horn-retraction",
        Family::PairIso => "pair-iso",
        Family::Contraction => "contraction",
    };
    r.set("family", json!(name));
    r.set("grid", json!(grid));
    r.set("instances", Value::Array(rows));
    Ok(r)
}

fn coefficients(s: &str) -> Result<Coefficients> {
    match s {
        "Z" => Ok(Coefficients::Integers),
        _ => {
            let m = s
                .strip_prefix("Z/")
                .and_then(|m| m.parse::<u64>().ok())
                .ok_or_else(|| anyhow!("coefficients must be Z or Z/m"))?;
            Ok(Coefficients::Mod(m))
        }
    }
}

fn homology_lines(r: &mut Report, label: &str, h: &HomologyResult) {
    r.line(format!("{label}: {h}"));
}

fn homology_cmd(space: &Space, coeffs: &str, subdivide: Option<usize>) -> Result<Report> {
    let c = space.load()?;
    let coeffs = coefficients(coeffs)?;
    let h = homology(&c, coeffs)?;
    let mut r = Report::new("homology");
    r.line(format!("{} vertices, {} simplices, euler characteristic {}", c.num_vertices(), c.num_simplices(), c.euler_characteristic()));
    homology_lines(&mut r, "homology", &h);
    r.set("coefficients", json!(coeffs.to_string()));
    r.set("euler_characteristic", json!(c.euler_characteristic()));
    r.set("homology", h.to_json());
    r.set("betti", json!(h.betti));
    if let Some(rounds) = subdivide {
        let sd = barycentric_iterated(&c, rounds).complex;
        let hs = homology(&sd, coeffs)?;
        let same = hs.same_groups(&h) && sd.euler_characteristic() == c.euler_characteristic();
        r.require(same);
        homology_lines(&mut r, &format!("after {rounds} subdivisions ({} simplices)", sd.num_simplices()), &hs);
        r.set("subdivided", json!({ "rounds": rounds, "simplices": sd.num_simplices(), "homology": hs.to_json(), "same": same }));
    }
    Ok(r)
}

fn h1_factors(h: &HomologyResult) -> Vec<u64> {
    h.degree(1).to_vec()
}

fn ab_factors(ab: &realtype::group::Abelianization) -> Vec<u64> {
    let mut f = vec![0u64; ab.free_rank];
    f.extend(ab.torsion.iter().map(|t| u64::try_from(t).unwrap_or(u64::MAX)));
    f
}

fn pi1(space: &Space, basepoint: Option<u64>, surface: Option<&str>) -> Result<Report> {
    let c = space.load()?;
    let base = basepoint.unwrap_or(c.vertices()[0]);
    let epg = edge_path_group(&c, base)?;
    let simple = epg.presentation.simplify();
    let ab = epg.presentation.abelianization();
    let h = homology(&c, Coefficients::Integers)?;
    let mut r = Report::new("pi1");
    r.line(format!(
        "edge-path group at {base}: {} generators, {} relators",
        epg.presentation.ngens(),
        epg.presentation.relators.len()
    ));
    r.line(format!("simplified: {simple}"));
    r.line(format!("abelianization: {ab}"));
    let agrees = ab_factors(&ab) == h1_factors(&h);
    r.require(agrees);
    r.line(format!("H1 = {} ({})", realtype::complex::format_group(h.degree(1)), if agrees { "agrees" } else { "differs" }));
    r.set("basepoint", json!(base));
    r.set("generators", json!(epg.presentation.ngens()));
    r.set("relators", json!(epg.presentation.relators.len()));
    r.set("simplified", simple.to_json());
    r.set("abelianization", json!(ab.to_string()));
    r.set("h1", json!(realtype::complex::format_group(h.degree(1))));
    r.set("h1_agrees", json!(agrees));
    if let Some(s) = surface {
        let gd: Vec<usize> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| anyhow!("--surface takes G,D"))?;
        let [g, d] = gd[..] else { bail!("--surface takes G,D") };
        let sab = surface_group(g, d).abelianization();
        let same = ab_factors(&sab) == h1_factors(&h);
        r.require(same);
        r.line(format!("surface group ({g},{d}) abelianizes to {sab} ({})", if same { "agrees" } else { "differs" }));
        r.set("surface", json!({ "g": g, "d": d, "abelianization": sab.to_string(), "agrees": same }));
    }
    Ok(r)
}

/// Every basepointed lift, by search over sheets vertex by vertex.
fn count_lifts(f: &ComplexMap, total: &CoverComplex, base: usize, sheet_vertex: usize) -> usize {
    let n = f.source.num_vertices();
    let k = total.degree;
    let adj = f.source.neighbours();
    let mut vm = vec![usize::MAX; n];
    fn go(
        x: usize,
        vm: &mut Vec<usize>,
        f: &ComplexMap,
        total: &CoverComplex,
        adj: &[Vec<usize>],
        k: usize,
        base: usize,
        sheet_vertex: usize,
    ) -> usize {
        let n = vm.len();
        if x == n {
            let ok = ComplexMap::from_positions(f.source.clone(), total.total.clone(), vm.clone()).is_ok();
            return usize::from(ok);
        }
        let mut count = 0;
        for s in 0..k {
            let y = f.vertex_map[x] * k + s;
            if x == base && y != sheet_vertex {
                continue;
            }
            let fits = adj[x].iter().filter(|&&u| u < x).all(|&u| {
                let mut e = vec![vm[u], y];
                e.sort_unstable();
                e.dedup();
                total.total.contains(&e)
            });
            if fits {
                vm[x] = y;
                count += go(x + 1, vm, f, total, adj, k, base, sheet_vertex);
                vm[x] = usize::MAX;
            }
        }
        count
    }
    go(0, &mut vm, f, total, &adj, k, base, sheet_vertex)
}

fn covers(
    space: &Space,
    degree: usize,
    check_riemann: bool,
    lift: Option<&PathBuf>,
    source_base: u64,
    sheet: usize,
    budget: u64,
) -> Result<Report> {
    if degree == 0 {
        bail!("--degree must be positive");
    }
    let c = space.load()?;
    let found = covers_of_degree(&c, degree, budget)?;
    let mut r = Report::new("covers");
    r.line(format!("{} connected covers of degree {degree}", found.len()));
    r.set("degree", json!(degree));
    r.set("covers", json!(found.len()));
    let mut rows = Vec::new();
    for cov in &found {
        let total = cov.total_space()?;
        let h = homology(&total.total, Coefficients::Integers)?;
        rows.push(json!({ "monodromy": cov.to_json()["monodromy"], "h1": realtype::complex::format_group(h.degree(1)) }));
    }
    if check_riemann {
        let rep = riemann_equivalence_check(&c, degree, budget)?;
        r.require(rep.passed());
        r.line(format!(
            "{} covers {} {} subgroup classes",
            rep.covers,
            if rep.covers == rep.subgroup_classes { "=" } else { "≠" },
            rep.subgroup_classes
        ));
        if !rep.objects.is_empty() {
            let agree = rep.objects.iter().filter(|o| o.agree).count();
            r.line(format!("H1 of total space matches subgroup abelianization for {agree} of {}", rep.objects.len()));
        }
        r.set("riemann", serde_json::to_value(&rep)?);
    }
    if let Some(path) = lift {
        let f = inputs::complex_map(path)?;
        let base = f.source.position(source_base)?;
        let mut lifts = Vec::new();
        for (i, cov) in found.iter().enumerate() {
            let total = cov.total_space()?;
            let lifted = lifting_criterion(&f, source_base, sheet, cov)?;
            let sheet_vertex = f.vertex_map[base] * degree + sheet;
            let all = count_lifts(&f, &total, base, sheet_vertex);
            let ok = all == usize::from(lifted.is_some());
            r.require(ok);
            r.line(format!(
                "cover {i}: {} ({} basepointed lifts found by search)",
                if lifted.is_some() { "lifts" } else { "does not lift" },
                all
            ));
            lifts.push(json!({
                "cover": i,
                "lifts": lifted.is_some(),
                "lift": lifted.map(|g| g.vertex_map.iter().map(|&y| total.total.vertices()[y]).collect::<Vec<_>>()),
                "lifts_by_search": all,
                "consistent": ok,
            }));
        }
        r.set("lifting", Value::Array(lifts));
    }
    r.set("objects", Value::Array(rows));
    Ok(r)
}

fn group_or_pi1(group: Option<&str>, space: &Space) -> Result<realtype::group::GroupPresentation> {
    match (group, space.given()) {
        (Some(g), false) => inputs::group(g),
        (None, true) => {
            let c = space.load()?;
            Ok(edge_path_group(&c, c.vertices()[0])?.presentation.simplify())
        }
        _ => bail!("give exactly one of --group and a space (--input or --model)"),
    }
}

fn homcount(group: Option<&str>, space: &Space, target: &str, cohomology: bool, budget: u64) -> Result<Report> {
    let pres = group_or_pi1(group, space)?;
    let t = FiniteGroupTable::builtin(target)?;
    let count = count_homs(&pres, &t, budget)?;
    let mut r = Report::new("homcount");
    r.line(format!("|Hom({pres}, {target})| = {count}"));
    r.set("group", pres.to_json());
    r.set("target", json!(target));
    r.set("homs", json!(count));
    if cohomology {
        if !space.given() {
            bail!("--cohomology needs a space");
        }
        let m: u64 = target
            .strip_prefix("Z/")
            .and_then(|m| m.parse().ok())
            .ok_or_else(|| anyhow!("--cohomology needs a target Z/m"))?;
        let order = cohomology_order_mod(&space.load()?, 1, m)?;
        let same = order == count.into();
        r.require(same);
        r.line(format!("|H^1(space; Z/{m})| = {order} ({})", if same { "agrees" } else { "differs" }));
        r.set("cohomology_order", json!(order.to_string()));
        r.set("agrees", json!(same));
    }
    Ok(r)
}

fn low_index(group: Option<&str>, space: &Space, index: usize, budget: u64) -> Result<Report> {
    let pres = group_or_pi1(group, space)?;
    let classes = low_index_subgroups(&pres, index, budget)?;
    let subgroups = subgroups_of_index(&pres, index, budget)?;
    let mut r = Report::new("low-index");
    r.line(format!("{} conjugacy classes, {} subgroups of index {index}", classes.len(), subgroups.len()));
    let mut rows = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let ab = c.presentation(&pres).abelianization();
        let action: Vec<Vec<usize>> = c.action.iter().map(|p| p.iter().map(|x| x + 1).collect()).collect();
        r.line(format!("class {i}: action {action:?}, abelianization {ab}"));
        rows.push(json!({ "action": action, "abelianization": ab.to_string() }));
    }
    r.set("index", json!(index));
    r.set("classes", json!(classes.len()));
    r.set("subgroups", json!(subgroups.len()));
    r.set("objects", Value::Array(rows));
    Ok(r)
}

fn kan_model(spec: &str, dim: usize) -> Result<FinSimplicialSet> {
    let (head, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = || -> Result<Vec<usize>> {
        args.split(',').map(|s| s.trim().parse().map_err(|_| anyhow!("bad parameters in {spec:?}"))).collect()
    };
    Ok(match (head, args.is_empty()) {
        ("circle", true) => FinSimplicialSet::circle(dim),
        ("point", true) => FinSimplicialSet::point(dim),
        ("delta", false) => match nums()?[..] {
            [n] => FinSimplicialSet::delta(n, dim),
            _ => bail!("delta takes N"),
        },
        ("horn", false) => match nums()?[..] {
            [n, k] => FinSimplicialSet::horn(n, k, dim)?,
            _ => bail!("horn takes N,K"),
        },
        ("nerve", false) => FinSimplicialSet::nerve_of_group(&FiniteGroupTable::builtin(args)?, dim),
        _ => bail!("unknown simplicial set {spec:?}"),
    })
}

fn lift_lines(r: &mut Report, label: &str, rep: &LiftReport) {
    r.line(format!(
        "{label}: {} ({} horn instances, {} filled, {} outside the cover)",
        rep.status(),
        rep.instances_checked,
        rep.fillers_found,
        rep.skipped
    ));
    // an inner horn makes the better witness
    let inner = rep.failures.iter().find(|w| w.k > 0 && w.k < w.n);
    if let Some(w) = inner.or(rep.failures.first()) {
        let faces: Vec<String> = w.faces.iter().map(|f| f.clone().unwrap_or_else(|| "_".into())).collect();
        r.line(format!("  witness: horn Λ^{}_{} with faces ({}): {}", w.n, w.k, faces.join(", "), w.reason));
    }
}

fn fibration(space: &Space, fiber: Option<&str>, cover_degree: Option<usize>, kan: Option<&str>, dim: usize) -> Result<Report> {
    let mut r = Report::new("fibration-check");
    r.set("dim", json!(dim));
    if let Some(spec) = kan {
        if space.given() || fiber.is_some() || cover_degree.is_some() {
            bail!("--kan takes no base, fiber or cover");
        }
        let x = kan_model(spec, dim)?;
        let rep = kan_check(&x, dim)?;
        r.require(rep.passed());
        lift_lines(&mut r, &format!("Kan condition for {spec}"), &rep);
        r.set("kan", json!(spec));
        r.set("report", serde_json::to_value(&rep)?);
        return Ok(r);
    }
    let c = space.load()?;
    let b = FinSimplicialSet::from_complex(&c, dim);
    let stars = star_subsets(&c, &b);
    let mut rows = Vec::new();
    match (fiber, cover_degree) {
        (Some(f), None) => {
            let fib = match f {
                "point" => FinSimplicialSet::point(dim),
                "circle" => FinSimplicialSet::circle(dim),
                g => FinSimplicialSet::nerve_of_group(&FiniteGroupTable::builtin(g)?, dim),
            };
            let p = product_projection(&b, &fib);
            let rep = subordinate_lifting_check(&p, &stars, dim)?;
            r.require(rep.passed());
            lift_lines(&mut r, &format!("product bundle with fiber {f}"), &rep);
            rows.push(json!({ "bundle": format!("product:{f}"), "report": serde_json::to_value(&rep)? }));
        }
        (None, Some(k)) => {
            let found = covers_of_degree(&c, k, DEFAULT_BUDGET)?;
            if found.is_empty() {
                r.line(format!("no connected covers of degree {k}"));
            }
            for (i, cov) in found.iter().enumerate() {
                let p = from_cover(cov, dim)?;
                let rep = subordinate_lifting_check(&p, &stars, dim)?;
                r.require(rep.passed());
                lift_lines(&mut r, &format!("degree-{k} cover {i}"), &rep);
                rows.push(json!({ "bundle": format!("cover:{k}:{i}"), "report": serde_json::to_value(&rep)? }));
            }
        }
        _ => bail!("give exactly one of --fiber, --cover-degree, --kan"),
    }
    r.set("bundles", Value::Array(rows));
    Ok(r)
}

fn nerve_cmd(space: &Space, cover: Option<&PathBuf>, star: bool) -> Result<Report> {
    let c = space.load()?;
    let cov = match (cover, star) {
        (Some(p), false) => CoverOfComplex::from_json(&c, &inputs::read_json(p)?)?,
        (None, true) => star_cover(&c).1,
        _ => bail!("give exactly one of --cover and --star"),
    };
    let n = nerve(&cov)?;
    let hn = homology(&n, Coefficients::Integers)?;
    let hc = homology(&c, Coefficients::Integers)?;
    let same = hn.same_groups(&hc);
    let mut r = Report::new("nerve");
    r.require(same);
    r.line(format!("{} cover members, nerve has {} simplices", cov.members.len(), n.num_simplices()));
    homology_lines(&mut r, "nerve", &hn);
    homology_lines(&mut r, "space", &hc);
    r.line(if same { "homology agrees" } else { "homology differs" });
    r.set("members", json!(cov.members.len()));
    r.set("nerve", n.to_json());
    r.set("nerve_homology", hn.to_json());
    r.set("space_homology", hc.to_json());
    r.set("agrees", json!(same));
    Ok(r)
}

fn realization_check(r: &mut Report, label: &str, f: &ComplexMap, grid: u32) -> Result<(PiecewiseMap<Q>, Vec<Vec<Q>>)> {
    let rf = realize_map::<Q>(f);
    let pts = rf.source.grid_points(grid);
    let clashes = rf.disagreements(&pts);
    let images = vertex_images(&rf, &f.source)?;
    let expected: Vec<Vec<Q>> = f
        .vertex_map
        .iter()
        .map(|&w| (0..f.target.num_vertices()).map(|i| Q::from_integer(i64::from(i == w).into())).collect())
        .collect();
    let ok = clashes.is_empty() && images == expected;
    r.require(ok);
    r.line(format!(
        "{label}: {} pieces, {} grid points, {} where pieces disagree, vertices {}",
        rf.pieces.len(),
        pts.len(),
        clashes.len(),
        if images == expected { "sent to vertices" } else { "misplaced" }
    ));
    r.set(label, json!({ "pieces": rf.pieces.len(), "grid_points": pts.len(), "disagreements": clashes.len() }));
    Ok((rf, pts))
}

fn adjunction(map: Option<&PathBuf>, then: Option<&PathBuf>, space: &Space, assignment: Option<&PathBuf>, grid: u32) -> Result<Report> {
    let mut r = Report::new("adjunction");
    r.set("grid", json!(grid));
    match (map, assignment) {
        (Some(mp), None) => {
            if space.given() {
                bail!("--map takes no space");
            }
            let f = inputs::complex_map(mp)?;
            let (rf, pts) = realization_check(&mut r, "first", &f, grid)?;
            if let Some(tp) = then {
                let g = inputs::complex_map(tp)?;
                let gf = f.then(&g)?;
                let (rg, _) = realization_check(&mut r, "second", &g, grid)?;
                let (rgf, _) = realization_check(&mut r, "composite", &gf, grid)?;
                let mut mismatches = Vec::new();
                for p in &pts {
                    let lhs = rf.eval(p).and_then(|y| rg.eval(&y));
                    if lhs.as_ref().ok() != rgf.eval(p).as_ref().ok() || lhs.is_err() {
                        mismatches.push(p.clone());
                    }
                }
                let ok = mismatches.is_empty();
                r.require(ok);
                r.line(format!(
                    "realization of the composite {} the composite of realizations on {} points",
                    if ok { "equals" } else { "differs from" },
                    pts.len()
                ));
                if let Some(w) = mismatches.first() {
                    r.line(format!("  witness {}", point_text(w)));
                }
                r.set("functorial", json!(ok));
                r.set("witness", json!(mismatches.first().map(|w| point_json(w))));
            }
        }
        (None, Some(ap)) => {
            if then.is_some() {
                bail!("--then needs --map");
            }
            let c = space.load()?;
            let asg = inputs::assignment(ap)?;
            let dim = asg.iter().flat_map(|(_, pts)| pts.first()).map(|p| p.len()).next().unwrap_or(0);
            let f = adjunction_decode(&c, &asg, cube::<Real>(dim))?;
            let pts = f.source.grid_points(grid);
            let clashes = f.disagreements(&pts);
            let outside = pts.iter().filter(|p| !f.eval(p).and_then(|y| f.target.contains(&y)).unwrap_or(false)).count();
            let images = vertex_images(&f, &c)?;
            let mut assigned = BTreeMap::new();
            for (ids, ps) in &asg {
                for (id, p) in ids.iter().zip(ps) {
                    assigned.insert(*id, p.clone());
                }
            }
            let round_trip = c.vertices().iter().zip(&images).all(|(id, img)| assigned.get(id) == Some(img));
            let ok = clashes.is_empty() && outside == 0 && round_trip;
            r.require(ok);
            r.line(format!("glued map into [0,1]^{dim}: {} pieces, {} grid points", f.pieces.len(), pts.len()));
            r.line(format!("{} where pieces disagree, {} outside the cube", clashes.len(), outside));
            r.line(format!("vertex images {}", if round_trip { "recovered" } else { "not recovered" }));
            r.set("pieces", json!(f.pieces.len()));
            r.set("disagreements", json!(clashes.len()));
            r.set("outside_target", json!(outside));
            r.set("round_trip", json!(round_trip));
            r.set("vertex_images", json!(images.iter().map(|p| point_json(p)).collect::<Vec<_>>()));
        }
        _ => bail!("give exactly one of --map and --assignment"),
    }
    Ok(r)
}

fn universal(space: &Space, bound: usize, budget: u64) -> Result<Report> {
    let c = space.load()?;
    let mut r = Report::new("universal-cover");
    r.set("bound", json!(bound));
    match universal_cover_finite(&c, bound, budget)? {
        Some(u) => {
            let h = homology(&u.total, Coefficients::Integers)?;
            r.line(format!(
                "simply connected cover of degree {}: {} vertices, {} simplices",
                u.degree,
                u.total.num_vertices(),
                u.total.num_simplices()
            ));
            homology_lines(&mut r, "total space", &h);
            r.set("found", json!(true));
            r.set("degree", json!(u.degree));
            r.set("total", u.total.to_json());
            r.set("homology", h.to_json());
        }
        None => {
            r.line(format!("no simply connected cover of degree at most {bound}"));
            r.set("found", json!(false));
        }
    }
    Ok(r)
}

fn probe_profinite(left: &str, right: &str, targets: &str, expect: Expect, budget: u64) -> Result<Report> {
    let g1 = inputs::group(left)?;
    let g2 = inputs::group(right)?;
    let ts = inputs::targets(targets)?;
    let rep = profinite_probe(&g1, &g2, &ts, budget)?;
    let mut r = Report::new("probe-profinite");
    for t in &rep.per_target {
        r.line(format!("{}: {} vs {}{}", t.target, t.left, t.right, if t.agree { "" } else { "  distinguished" }));
    }
    let equal = rep.passed();
    r.line(format!("hom counts {}", if equal { "agree on every target" } else { "distinguish the groups" }));
    r.require(match expect {
        Expect::Equal => equal,
        Expect::Distinct => !equal,
    });
    r.set("left", g1.to_json());
    r.set("right", g2.to_json());
    r.set("expect", json!(if expect == Expect::Equal { "equal" } else { "distinct" }));
    r.set("per_target", serde_json::to_value(&rep.per_target)?);
    Ok(r)
}

fn probe_exact(total: &str, fiber: &str, base: &str, projection: &str, targets: &str, budget: u64) -> Result<Report> {
    let h = inputs::group(total)?;
    let g = inputs::group(base)?;
    let fw = inputs::words(&h, fiber)?;
    let pw = inputs::words(&g, projection)?;
    let ts = inputs::targets(targets)?;
    let rep = exact_sequence_probe(&h, &fw, &g, &pw, &ts, budget)?;
    let mut r = Report::new("probe-exact-seq");
    for t in &rep.per_target {
        r.line(format!(
            "{}: {} homs killing the fiber, {} from the base{}{}",
            t.target,
            t.killing_fiber,
            t.base,
            if t.projection_valid { "" } else { ", projection not a homomorphism" },
            if t.exact { "" } else { ", not exact" }
        ));
    }
    r.require(rep.passed());
    r.set("per_target", serde_json::to_value(&rep.per_target)?);
    Ok(r)
}
