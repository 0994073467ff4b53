//! The subcommands. Each returns a [`Report`]: text lines, a JSON value with
//! the same content, and whether every verification passed.

use std::path::Path;

use num_traits::Zero;
use serde_json::{json, Value};
use spark_core::arith::{frac, Int, Rat};
use spark_core::cochain::{evaluate, homology_basis, simplicial_cochains, CechTotalComplex};
use spark_core::hodge::{abel_jacobi, flat_group, hodge_spark, linear_equivalence_zero, verify_spark_equation, Hodge};
use spark_core::holonomy::{
    apply_gauge, fine_fundamental_cycle, gauge_equivalent, grundle_from_hyperspark, grundle_holonomy, holonomy_degree1, holonomy_degree2,
    holonomy_smooth_representative, holonomy_via_character, hyperspark_from_grundle, loop_arcs, smooth_representative, Grundle, LabeledCycle,
};
use spark_core::models::{build_model, embedding, literal_axiom_b_witness, pullback, ModelFamily, ModelKind, SparkModel};
use spark_core::simplicial::{fixtures, Chain, SimplicialComplex, Subdivision};
use spark_core::spark::compute_grid;
use spark_core::whitney::whitney_matrix;

use crate::format::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] spark_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub type CliResult<T> = Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

#[derive(Clone, Debug)]
pub struct Config {
    pub depth: usize,
    pub cert_depth: usize,
    pub model: Option<ModelKind>,
    pub degree: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config { depth: 1, cert_depth: 2, model: None, degree: None }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn new() -> Self {
        Report { lines: Vec::new(), json: json!({}), ok: true }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, name: &str, holds: bool) {
        self.ok &= holds;
        self.line(format!("{}: {}", name, if holds { "PASS" } else { "FAIL" }));
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json[key] = v;
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// A complex from a file, or a shipped fixture written `fixture:NAME`.
pub fn load_complex(path: &Path) -> CliResult<(ComplexSpec, SimplicialComplex)> {
    let s = path.to_string_lossy();
    if let Some(name) = s.strip_prefix("fixture:") {
        let k = fixtures::by_name(name).ok_or_else(|| input(format!("unknown fixture `{}`; known: {}", name, fixtures::NAMES.join(", "))))?;
        // rebuild so fixtures and files index simplices the same way
        let spec = ComplexSpec::from_complex(&k);
        let k = spec.build()?;
        return Ok((spec, k));
    }
    let spec = parse_complex(&read(path)?)?;
    let k = spec.build()?;
    Ok((spec, k))
}

fn same_complex(a: &ComplexSpec, b: &ComplexSpec) -> bool {
    let sorted = |s: &ComplexSpec| {
        let mut f = s.facets.clone();
        f.sort();
        f
    };
    a.vertices == b.vertices && a.oriented == b.oriented && sorted(a) == sorted(b)
}

fn rat_json(x: &Rat) -> Value {
    Value::String(fmt_rat(x))
}

fn vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn degree(cfg: &Config, default: usize) -> usize {
    cfg.degree.unwrap_or(default)
}

fn kinds(cfg: &Config) -> Vec<ModelKind> {
    match cfg.model {
        Some(k) => vec![k],
        // the hyperspark models need a star cover, which needs depth >= 1
        None if cfg.depth == 0 => vec![ModelKind::CheegerSimons],
        None => vec![ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, ModelKind::CochainHyperspark],
    }
}

pub fn cohomology(path: &Path, ring: &str, cfg: &Config) -> CliResult<Report> {
    let (_, k) = load_complex(path)?;
    let q = degree(cfg, 1);
    if q > k.dim() {
        return Err(input(format!("degree {} exceeds the dimension {}", q, k.dim())));
    }
    let c = simplicial_cochains(&k);
    let mut r = Report::new();
    let ring = ring.to_ascii_lowercase();
    let (label, free, torsion, reps) = if ring == "z" {
        let g = c.integer_cohomology(q);
        let mut reps: Vec<(String, Vec<Rat>)> = g.free_reps.iter().map(|v| ("free".to_string(), v.clone())).collect();
        reps.extend(g.torsion_reps.iter().map(|t| (format!("order {}", t.order), t.cocycle.clone())));
        ("Z".to_string(), g.invariants.free_rank, g.invariants.torsion.clone(), reps)
    } else if ring == "q" {
        let g = c.rational_cohomology(q);
        (String::from("Q"), g.invariants.free_rank, Vec::new(), g.free_reps.iter().map(|v| ("free".to_string(), v.clone())).collect())
    } else if let Some(n) = ring.strip_prefix("z/") {
        let n: Int = n.parse().map_err(|_| input("ring must be z, q or z/N"))?;
        if n <= Int::from(1) {
            return Err(input("modulus must be at least 2"));
        }
        let g = c.mod_n_cohomology(q, &n);
        let inv = g.invariants();
        let reps = g.generators().iter().map(|v| ("generator".to_string(), v.clone())).collect();
        (format!("Z/{}", n), inv.free_rank, inv.torsion.clone(), reps)
    } else {
        return Err(input("ring must be z, q or z/N"));
    };
    let mut summary = format!("free rank {}", free);
    if !torsion.is_empty() {
        summary.push_str(&format!(", torsion {}", fmt_ints(&torsion)));
    }
    r.line(format!("H^{}(K; {}): {}", q, label, summary));
    for (i, (kind, v)) in reps.iter().enumerate() {
        r.line(format!("  generator {} ({}): {}", i + 1, kind, fmt_vec(v)));
    }
    r.set("degree", json!(q));
    r.set("ring", json!(label));
    r.set("free_rank", json!(free));
    r.set("torsion", ints_json(&torsion));
    r.set("summary", json!(summary));
    r.set("representatives", Value::Array(reps.iter().map(|(_, v)| vec_json(v)).collect()));
    Ok(r)
}

fn model_checks(r: &mut Report, m: &SparkModel, label: &str) {
    let a = &m.axioms;
    r.check(&format!("{} d^2 = 0", label), a.d_squared);
    r.check(&format!("{} E and I are subcomplexes", label), a.e_subcomplex && a.i_subcomplex);
    for (q, ok) in a.axiom_a.iter().enumerate() {
        r.check(&format!("{} axiom (A) degree {}", label, q), *ok);
    }
    for (q, ok) in a.axiom_b.iter().enumerate().skip(1) {
        r.check(&format!("{} axiom (B) degree {}", label, q), *ok);
    }
    r.check(&format!("{} E^0 ∩ I^0 = closed lattice elements", label), a.consequence_c);
}

pub fn verify(paths: &[std::path::PathBuf], cfg: &Config) -> CliResult<Report> {
    let first = paths.first().ok_or_else(|| input("verify needs a file"))?;
    if !first.to_string_lossy().starts_with("fixture:") && file_kind(&read(first)?).as_deref() == Some("witness") {
        if paths.len() != 3 {
            return Err(input("witness verification needs: witness left right"));
        }
        return verify_witness(&paths[0], &paths[1], &paths[2], cfg);
    }
    let (_, k) = load_complex(first)?;
    let m = cfg.depth;
    let mut r = Report::new();
    let mut models: Vec<Value> = Vec::new();
    for kind in kinds(cfg) {
        let label = format!("[{} depth {}]", kind.name(), m);
        match build_model(kind, &k, m) {
            Ok(model) => {
                model_checks(&mut r, &model, &label);
                models.push(json!({"model": kind.name(), "depth": m, "axioms": model.axioms.passes()}));
                if cfg.cert_depth > m {
                    let cert = format!("[{} depth {}]", kind.name(), cfg.cert_depth);
                    match build_model(kind, &k, cfg.cert_depth) {
                        Ok(c) => {
                            let b = c.axioms.axiom_b.iter().all(|&x| x);
                            r.check(&format!("{} axiom (B) all degrees", cert), b);
                        }
                        Err(e) => {
                            r.check(&format!("{} build", cert), false);
                            r.line(format!("  {}", e));
                        }
                    }
                }
                for q in 1..=model.presentation.top_degree().min(k.dim()) {
                    let g = compute_grid(&model.presentation, q)?;
                    r.check(&format!("{} grid degree {} exact", label, q), g.exact());
                }
            }
            Err(e) => {
                r.check(&format!("{} build", label), false);
                r.line(format!("  {}", e));
                if kind == ModelKind::CheegerSimons {
                    if let Some((q, w)) = literal_axiom_b_witness(&k, m)? {
                        r.line(format!("  axiom (B) witness in degree {}: {}", q, fmt_vec(&w)));
                        models.push(json!({"model": kind.name(), "depth": m, "axioms": false, "witness_degree": q, "witness": vec_json(&w)}));
                    }
                }
            }
        }
    }
    if m >= 1 && cfg.model.is_none() {
        match ModelFamily::build(&k, m) {
            Ok(fam) => {
                for sub in [&fam.cs, &fam.smooth] {
                    let rep = embedding(sub, &fam.cochain)?.verify();
                    r.check(&format!("[embedding {} -> cochain-hyperspark] chain map", sub.name()), rep.chain_map);
                    r.check(&format!("[embedding {} -> cochain-hyperspark] E onto Ē", sub.name()), rep.e_matches);
                    r.check(&format!("[embedding {} -> cochain-hyperspark] I into Ī", sub.name()), rep.i_contained);
                    r.check(&format!("[embedding {} -> cochain-hyperspark] H(I) ≅ H(Ī)", sub.name()), rep.lattice_cohomology_iso.iter().all(|&x| x));
                }
            }
            Err(e) => {
                r.check("[embeddings] build", false);
                r.line(format!("  {}", e));
            }
        }
    }
    r.set("models", Value::Array(models));
    r.set("ok", json!(r.ok));
    let verdict = if r.ok { "ALL PASS" } else { "FAILURES" };
    r.line(verdict);
    Ok(r)
}

pub fn characters(path: &Path, cfg: &Config) -> CliResult<Report> {
    let (_, k) = load_complex(path)?;
    let q = degree(cfg, 1);
    let kind = cfg.model.unwrap_or(ModelKind::CheegerSimons);
    let model = build_model(kind, &k, cfg.depth)?;
    if q > model.presentation.top_degree() {
        return Err(input(format!("degree {} out of range", q)));
    }
    let g = compute_grid(&model.presentation, q)?;
    let mut r = Report::new();
    r.line(format!("model {} depth {} degree {}", kind.name(), cfg.depth, q));
    let positions = ["top-left", "top-middle", "top-right", "middle-left", "middle-middle", "middle-right", "bottom-left", "bottom-middle", "bottom-right"];
    let mut nodes = Vec::new();
    for (node, pos) in g.nodes.iter().zip(positions) {
        r.line(format!("  {:<13} {:<12} {}", pos, node.name, node.invariants));
        nodes.push(json!({"position": pos, "name": node.name, "invariants": node.invariants.to_string(),
            "torus_dim": node.invariants.torus_dim, "free_rank": node.invariants.free_rank, "torsion": ints_json(&node.invariants.torsion)}));
    }
    for label in ["top row", "middle row", "bottom row", "left column", "middle column", "right column"] {
        let holds = g.checks.iter().filter(|c| c.name.starts_with(label)).all(|c| c.holds);
        r.ok &= holds;
        r.line(format!("{}: {}", label, if holds { "EXACT" } else { "NOT EXACT" }));
    }
    let squares = g.checks.iter().filter(|c| c.name.contains("square")).all(|c| c.holds);
    r.ok &= squares;
    r.line(format!("squares: {}", if squares { "COMMUTE" } else { "DO NOT COMMUTE" }));
    for c in g.checks.iter().filter(|c| !c.holds) {
        r.line(format!("  failed: {} witness {}", c.name, c.witness.as_deref().map(fmt_vec).unwrap_or_default()));
    }
    let fg = flat_group(&k, q)?;
    r.line(format!("flat classes H^{}(K; R/Z) = {}", q, fg.invariants));
    let mut flat = Vec::new();
    for (j, (e, z)) in fg.torus_generators.iter().zip(&fg.free_cycles).enumerate() {
        let periods: Vec<Rat> = fg.free_cycles.iter().map(|c| evaluate(&e.cochain, c)).collect();
        r.line(format!("  torus coordinate {}: periods of its generator on the free cycles {} ({}-cycle with {} simplices)", j + 1, fmt_vec(&periods), q, z.len()));
        flat.push(json!({"kind": "torus", "periods": vec_json(&periods)}));
    }
    for (e, (_, n)) in fg.torsion_generators.iter().zip(&fg.torsion_cycles) {
        r.line(format!("  torsion coordinate of order {}: generator holonomy {}", n, fmt_vec(&e.holonomy)));
        flat.push(json!({"kind": "torsion", "order": n.to_string(), "holonomy": vec_json(&e.holonomy)}));
    }
    r.set("nodes", Value::Array(nodes));
    r.set("exact", json!(g.exact()));
    r.set("flat_group", json!(fg.invariants.to_string()));
    r.set("flat_generators", Value::Array(flat));
    Ok(r)
}

struct LoadedGrundle {
    file: GrundleFile,
    fam: ModelFamily,
    grundle: Grundle,
}

fn load_grundle(path: &Path) -> CliResult<LoadedGrundle> {
    let file = parse_grundle(&read(path)?)?;
    let k = file.complex.build()?;
    if file.depth == 0 {
        return Err(input("grundles need depth at least 1"));
    }
    let fam = ModelFamily::build(&k, file.depth)?;
    let tot = fam.smooth.cech.as_ref().expect("hyperspark model");
    let values = file.values(tot)?;
    let grundle = Grundle { degree: file.degree, values };
    if tot.block_range(file.degree, 0).any(|i| grundle.values[i] < Rat::zero() || grundle.values[i] >= Rat::from_integer(1.into())) {
        return Err(input("angles must lie in [0, 1)"));
    }
    Ok(LoadedGrundle { file, fam, grundle })
}

fn cycle_on(model: &SparkModel, c: &CycleFile) -> CliResult<Chain> {
    if c.depth > model.depth {
        return Err(input(format!("cycle depth {} is finer than the model depth {}", c.depth, model.depth)));
    }
    let coarse = if c.depth == 0 { model.base.clone() } else { Subdivision::new(&model.base, c.depth).complex };
    let mut z = c.chain(&coarse)?;
    for level in &model.subdivision.levels()[c.depth..model.depth] {
        z = level.apply(&z);
    }
    Ok(z)
}

fn labeled_cycle(tot: &CechTotalComplex, z: &Chain, c: &CycleFile, depth: usize) -> CliResult<LabeledCycle> {
    let mut labels = spark_core::holonomy::auto_labels(tot, z.degree);
    if !c.labels.is_empty() {
        if c.depth != depth {
            return Err(input("labels must be given on the model's subdivision"));
        }
        let fine = tot.cover.fine();
        for (s, a) in &c.labels {
            let q = s.len().checked_sub(1).ok_or_else(|| input("empty labeled simplex"))?;
            let i = fine.oriented_index(s).ok_or_else(|| input(format!("labeled simplex {:?} is not a fine simplex", s)))?.0;
            if q >= labels.len() {
                return Err(input(format!("labeled simplex {:?} is above the cycle degree", s)));
            }
            let admissible = spark_core::holonomy::admissible_labels(tot, q, i);
            if !admissible.contains(a) {
                return Err(input(format!("label {} on simplex {} is not admissible; the cover elements containing it are {:?}", a, fmt_verts(s), admissible)));
            }
            labels[q][i] = *a;
        }
    }
    Ok(LabeledCycle::new(tot, z, labels)?)
}

pub fn holonomy(grundle: &Path, cycle: &Path) -> CliResult<Report> {
    let LoadedGrundle { file, fam, grundle } = load_grundle(grundle)?;
    let cfile = parse_cycle(&read(cycle)?)?;
    if cfile.degree != file.degree {
        return Err(input(format!("cycle degree {} does not match grundle degree {}", cfile.degree, file.degree)));
    }
    let smooth = &fam.smooth;
    let tot = smooth.cech.as_ref().expect("hyperspark model");
    let k = file.degree;
    let check = grundle.check(smooth)?;
    let mut r = Report::new();
    r.check("grundle cocycle condition", check.cocycle);
    r.check("grundle ladder", check.ladder);
    if !r.ok {
        return Ok(r);
    }
    let z = cycle_on(smooth, &cfile)?;
    let lc = labeled_cycle(tot, &z, &cfile, smooth.depth)?;
    let general = grundle_holonomy(&grundle, &lc)?;
    let mut table: Vec<(&str, Rat)> = vec![("general formula", general.clone())];
    if k == 1 {
        if let Ok(arcs) = loop_arcs(smooth, &z) {
            table.push(("degree-1 formula", holonomy_degree1(smooth, &grundle.values, &arcs)?));
        }
    }
    if k == 2 && smooth.depth == 1 && smooth.base.dim() == 2 && smooth.base.is_oriented() {
        let fund = fine_fundamental_cycle(smooth)?;
        if z == fund || z == fund.neg() {
            let v = holonomy_degree2(smooth, &grundle.values)?;
            table.push(("degree-2 formula", if z == fund { v } else { frac(&-v) }));
        }
    }
    let (x, _) = hyperspark_from_grundle(smooth, &grundle, None)?;
    let cs = fam.convert(ModelKind::SmoothHyperspark, ModelKind::CheegerSimons, k, &x)?;
    table.push(("via character", holonomy_via_character(&fam.cs, k, &cs, &z)?));
    if let Some(a) = smooth_representative(&fam.cs, k, &cs)? {
        table.push(("smooth representative", holonomy_smooth_representative(&fam.cs.subdivision, &a, &z)?));
    }
    let agree = table.iter().all(|(_, v)| *v == general);
    r.line(format!("holonomy {}", fmt_rat(&general)));
    for (name, v) in &table {
        r.line(format!("  {:<22} {}", name, fmt_rat(v)));
    }
    r.check("cross-check", agree);
    r.set("holonomy", rat_json(&general));
    r.set("routes", Value::Object(table.iter().map(|(n, v)| (n.to_string(), rat_json(v))).collect()));
    r.set("agree", json!(agree));
    Ok(r)
}

pub fn equiv(left: &Path, right: &Path, witness_out: Option<&Path>) -> CliResult<Report> {
    let text = read(left)?;
    let mut r = Report::new();
    let witness = match file_kind(&text).as_deref() {
        Some("grundle") => {
            let a = load_grundle(left)?;
            let b = parse_grundle(&read(right)?)?;
            if b.degree != a.file.degree || b.depth != a.file.depth || !same_complex(&b.complex, &a.file.complex) {
                return Err(input("grundles live on different complexes, depths or degrees"));
            }
            let tot = a.fam.smooth.cech.as_ref().expect("hyperspark model");
            let g2 = Grundle { degree: b.degree, values: b.values(tot)? };
            gauge_equivalent(&a.fam.smooth, &a.grundle, &g2)?.map(|w| {
                let mut f = WitnessFile::new("grundle", b.degree);
                f.push("b", &w.b);
                f.push("s", &w.s);
                f.push("h", &w.h);
                f
            })
        }
        Some("spark") => {
            let a = parse_spark(&text)?;
            let b = parse_spark(&read(right)?)?;
            if a.model != b.model || a.degree != b.degree || a.depth != b.depth || !same_complex(&a.complex, &b.complex) {
                return Err(input("sparks live in different models"));
            }
            let k = a.complex.build()?;
            let model = build_model(a.model, &k, a.depth)?;
            let n = model.presentation.dim(a.degree);
            let (x, y) = (a.dense(n)?, b.dense(n)?);
            model.presentation.equivalent(a.degree, &x, &y)?.map(|w| {
                let mut f = WitnessFile::new(a.model.name(), a.degree);
                f.push("b", &w.b);
                f.push("s", &w.s);
                f
            })
        }
        _ => return Err(input("equiv takes two grundle files or two spark files")),
    };
    match witness {
        Some(w) => {
            r.line("EQUIVALENT");
            let text = w.to_text();
            match witness_out {
                Some(p) => std::fs::write(p, &text).map_err(|source| CliError::Io { path: p.display().to_string(), source })?,
                None => r.lines.extend(text.lines().map(String::from)),
            }
            r.set("equivalent", json!(true));
            r.set("witness", json!(text));
        }
        None => {
            r.line("NOT EQUIVALENT");
            r.set("equivalent", json!(false));
        }
    }
    Ok(r)
}

fn verify_witness(witness: &Path, left: &Path, right: &Path, _cfg: &Config) -> CliResult<Report> {
    let w = parse_witness(&read(witness)?)?;
    let mut r = Report::new();
    let get = |name: &str| w.get(name).ok_or_else(|| input(format!("witness lacks `{}`", name)));
    if w.kind == "grundle" {
        let a = load_grundle(left)?;
        let b = parse_grundle(&read(right)?)?;
        let smooth = &a.fam.smooth;
        let tot = smooth.cech.as_ref().expect("hyperspark model");
        let g2 = Grundle { degree: b.degree, values: b.values(tot)? };
        // A1 = A2 + DB + S with the angles compared mod 1
        let moved = apply_gauge(smooth, &g2, &get("b")?, &get("s")?)?;
        r.check("A1 = A2 + DB + S", moved == a.grundle);
        let h = get("h")?;
        if w.degree > 0 {
            let dh = tot.apply(w.degree - 1, &h);
            let ok = tot.block_range(w.degree, 0).all(|i| (&a.grundle.values[i] - &g2.values[i] - &dh[i]).is_integer());
            r.check("g1 / g2 = exp(2πi δh)", ok);
        }
    } else {
        let kind = ModelKind::parse(&w.kind).ok_or_else(|| input(format!("unknown witness kind `{}`", w.kind)))?;
        let a = parse_spark(&read(left)?)?;
        let b = parse_spark(&read(right)?)?;
        let k = a.complex.build()?;
        let model = build_model(kind, &k, a.depth)?;
        let p = &model.presentation;
        let n = p.dim(w.degree);
        let (x, y) = (a.dense(n)?, b.dense(n)?);
        let bv = get("b")?;
        let s = get("s")?;
        let db = if w.degree == 0 { vec![Rat::zero(); n] } else { p.d(w.degree - 1, &bv) };
        let ok = x.iter().zip(&y).zip(&db).zip(&s).all(|(((x, y), d), s)| x - y == d + s);
        r.check("a1 - a2 = db + s", ok);
        r.check("s lies in I", p.i_coords(w.degree, &s).is_some());
    }
    r.set("ok", json!(r.ok));
    Ok(r)
}

fn load_cochain(path: &Path, k: &SimplicialComplex) -> CliResult<(CochainFile, SimplicialComplex, Vec<Rat>)> {
    let c = parse_cochain(&read(path)?)?;
    let fine = if c.depth == 0 { k.clone() } else { Subdivision::new(k, c.depth).complex };
    let v = c.values(&fine)?;
    Ok((c, fine, v))
}

pub fn hodge_spark_cmd(complex: &Path, cochain: &Path) -> CliResult<Report> {
    let (_, k) = load_complex(complex)?;
    let (file, fine, rv) = load_cochain(cochain, &k)?;
    if file.degree == 0 {
        return Err(input("R must have positive degree"));
    }
    let hodge = Hodge::identity(&fine)?;
    let s = hodge_spark(&hodge, file.degree - 1, &rv)?;
    let mut r = Report::new();
    r.line(format!("Hodge spark of a closed integer {}-cochain on a complex with {} vertices", file.degree, fine.count(0)));
    r.line(format!("sigma(R) = {}", fmt_vec(&s.sigma)));
    r.line(format!("H(R) = {}", fmt_vec(&s.harmonic)));
    r.line(format!("curvature on the harmonic basis = {}", fmt_vec(&s.curvature)));
    let exact = verify_spark_equation(&simplicial_cochains(&fine), &s, &rv);
    r.ok &= exact;
    r.line(format!("d sigma = H(R) - R: {}", if exact { "EXACT" } else { "FAILS" }));
    let sub = Subdivision::new(&k, file.depth);
    let in_image = spark_core::linalg::solve(&whitney_matrix(&sub, file.degree), &s.harmonic).is_some();
    r.line(format!("H(R) is a Whitney form: {}", if in_image { "yes" } else { "no (spark of the harmonic cochain model)" }));
    r.set("sigma", vec_json(&s.sigma));
    r.set("harmonic", vec_json(&s.harmonic));
    r.set("curvature", vec_json(&s.curvature));
    r.set("exact", json!(exact));
    r.set("whitney", json!(in_image));
    r.set("sigma_cochain", json!(CochainFile::from_values(&fine, file.degree - 1, file.depth, &s.sigma).to_text()));
    Ok(r)
}

pub fn abel_jacobi_cmd(complex: &Path, cochain: &Path) -> CliResult<Report> {
    let (_, k) = load_complex(complex)?;
    let (file, fine, gamma) = load_cochain(cochain, &k)?;
    let hodge = Hodge::identity(&fine)?;
    let c = simplicial_cochains(&fine);
    let rv = c.apply(file.degree, &gamma);
    if !rv.iter().all(|x| x.is_integer()) {
        return Err(input("dΓ must be an integer cochain"));
    }
    let aj = abel_jacobi(&hodge, file.degree, &gamma)?;
    let le = linear_equivalence_zero(&hodge, file.degree, &rv, &gamma)?;
    let mut r = Report::new();
    r.line(format!("R = dΓ = {}", fmt_vec(&rv)));
    r.line(format!("Abel-Jacobi periods {}", fmt_vec(&aj.periods)));
    r.line(if le { "LINEARLY EQUIVALENT TO ZERO" } else { "NOT LINEARLY EQUIVALENT TO ZERO" });
    let consistent = le == aj.is_zero();
    r.check("Abel-Jacobi zero iff linearly equivalent to zero", consistent);
    r.set("periods", vec_json(&aj.periods));
    r.set("linearly_equivalent_to_zero", json!(le));
    Ok(r)
}

pub fn pullback_cmd(source: &Path, target: &Path, spark: &Path, map: &str) -> CliResult<Report> {
    let (sspec, sk) = load_complex(source)?;
    let (tspec, tk) = load_complex(target)?;
    let vmap: Vec<usize> = map.split(',').map(|v| v.trim().parse().map_err(|_| input("map must be comma separated vertex numbers"))).collect::<CliResult<_>>()?;
    let f = parse_spark(&read(spark)?)?;
    if f.model != ModelKind::CheegerSimons {
        return Err(input("pullback works on CS sparks"));
    }
    if !same_complex(&f.complex, &tspec) {
        return Err(input("the spark does not live on the target complex"));
    }
    let xm = build_model(ModelKind::CheegerSimons, &sk, f.depth)?;
    let ym = build_model(ModelKind::CheegerSimons, &tk, f.depth)?;
    let a = f.dense(ym.presentation.dim(f.degree))?;
    let pulled = pullback(&xm, &ym, &vmap, f.degree, &a)?;
    let mut r = Report::new();
    r.line(format!("pulled back curvature {}", fmt_vec(&xm.curvature(f.degree, &pulled.a)?)));
    r.line(format!("pulled back divisor {}", fmt_vec(&xm.divisor(f.degree, &pulled.a)?)));
    let out = SparkFile::new(ModelKind::CheegerSimons, f.degree, f.depth, sspec, &pulled.a);
    r.lines.extend(out.to_text().lines().map(String::from));
    r.set("spark", json!(out.to_text()));
    Ok(r)
}

/// A flat grundle on the star cover with the given holonomy on the free
/// homology generators.
pub fn flat_grundle(complex: &Path, coords: &[Rat], cfg: &Config) -> CliResult<Report> {
    let (spec, k) = load_complex(complex)?;
    let q = degree(cfg, 1);
    let fg = flat_group(&k, q)?;
    let e = fg.torus_element(coords)?;
    let fam = ModelFamily::build(&k, cfg.depth.max(1))?;
    let h = whitney_matrix(&fam.cs.subdivision, q).mul_vec(&e.cochain);
    let x = fam.cs.flat_spark(q, &h)?.a;
    let y = fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, q, &x)?;
    let g = grundle_from_hyperspark(&fam.smooth, q, &y)?;
    let tot = fam.smooth.cech.as_ref().expect("hyperspark model");
    let file = GrundleFile::from_values(tot, spec, q, &g.values);
    let mut r = Report::new();
    r.lines.extend(file.to_text().lines().map(String::from));
    r.set("grundle", json!(file.to_text()));
    Ok(r)
}

/// The `index`-th free homology generator, subdivided to the given depth.
pub fn cycles(complex: &Path, index: usize, cfg: &Config) -> CliResult<Report> {
    let (_, k) = load_complex(complex)?;
    let q = degree(cfg, 1);
    let (free, tors) = homology_basis(&k, q);
    let all: Vec<Chain> = free.into_iter().chain(tors.into_iter().map(|(z, _)| z)).collect();
    let z = all.get(index).ok_or_else(|| input(format!("there are {} generators", all.len())))?;
    let sub = Subdivision::new(&k, cfg.depth);
    let fine = sub.subdivide_chain(z);
    let file = CycleFile::from_chain(&sub.complex, cfg.depth, &fine);
    let mut r = Report::new();
    r.lines.extend(file.to_text().lines().map(String::from));
    r.set("cycle", json!(file.to_text()));
    Ok(r)
}

/// The flat class with the given free coordinates as a spark file of the
/// chosen model.
pub fn flat_spark(complex: &Path, coords: &[Rat], cfg: &Config) -> CliResult<Report> {
    let (spec, k) = load_complex(complex)?;
    let q = degree(cfg, 1);
    let kind = cfg.model.unwrap_or(ModelKind::CheegerSimons);
    let fg = flat_group(&k, q)?;
    let e = fg.torus_element(coords)?;
    let fam = ModelFamily::build(&k, cfg.depth.max(1))?;
    let h = whitney_matrix(&fam.cs.subdivision, q).mul_vec(&e.cochain);
    let x = fam.cs.flat_spark(q, &h)?.a;
    let y = fam.convert(ModelKind::CheegerSimons, kind, q, &x)?;
    let file = SparkFile::new(kind, q, fam.cs.depth, spec, &y);
    let mut r = Report::new();
    r.lines.extend(file.to_text().lines().map(String::from));
    r.set("spark", json!(file.to_text()));
    Ok(r)
}

/// A complex in the file format, e.g. to materialize a fixture.
pub fn show(complex: &Path) -> CliResult<Report> {
    let (spec, _) = load_complex(complex)?;
    let mut r = Report::new();
    r.lines.extend(spec.to_text().lines().map(String::from));
    r.set("complex", json!(spec.to_text()));
    Ok(r)
}
