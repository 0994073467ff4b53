//! Line-oriented text formats for complexes, grundles, sparks, cycles,
//! cochains and equivalence witnesses.
//!
//! Blank lines and `#` comments are ignored. Numbers are exact: integers or
//! `p/q`. Fine simplices (on `Sd^m K`) are written by their vertex numbers in
//! the subdivision, comma separated, e.g. `3,17`.

use std::fmt::Write as _;

use num_traits::Zero;
use spark_core::arith::{Int, Rat};
use spark_core::cochain::CechTotalComplex;
use spark_core::models::ModelKind;
use spark_core::simplicial::{Chain, SimplicialComplex};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    At { line: usize, msg: String },
    #[error("{0}")]
    Missing(String),
}

fn at(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::At { line, msg: msg.into() }
}

/// Always `p/q`, so that `0` prints as `0/1`.
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rat::from_integer(s.trim().parse().ok()?)),
    }
}

pub fn parse_rat_list(s: &str) -> Option<Vec<Rat>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(parse_rat).collect()
}

fn parse_verts(s: &str) -> Option<Vec<usize>> {
    s.split(',').map(|v| v.trim().parse().ok()).collect()
}

pub fn fmt_verts(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Meaningful lines with their 1-based numbers.
fn lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
        })
        .collect()
}

fn usize_arg(line: usize, words: &[&str], i: usize) -> Result<usize, ParseError> {
    words.get(i).and_then(|w| w.parse().ok()).ok_or_else(|| at(line, format!("expected a number after `{}`", words[0])))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSpec {
    pub vertices: usize,
    pub oriented: bool,
    /// Facets in the given vertex order (the orientation when `oriented`).
    pub facets: Vec<Vec<usize>>,
}

impl ComplexSpec {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        let n = k.dim();
        let facets: Vec<Vec<usize>> = match k.orientation() {
            Some(o) if k.facets().iter().all(|f| f.len() == n + 1) => (0..k.count(n))
                .map(|i| {
                    let mut s = k.simplex(n, i).to_vec();
                    if o[i] < 0 && s.len() >= 2 {
                        s.swap(0, 1);
                    }
                    s
                })
                .collect(),
            _ => k.facets().to_vec(),
        };
        ComplexSpec { vertices: k.vertex_count(), oriented: k.is_oriented(), facets }
    }

    pub fn build(&self) -> Result<SimplicialComplex, ParseError> {
        if let Some(v) = self.facets.iter().flatten().find(|&&v| v >= self.vertices) {
            return Err(ParseError::Missing(format!("vertex {} out of range", v)));
        }
        let err = |e: spark_core::Error| ParseError::Missing(e.to_string());
        if !self.oriented {
            return SimplicialComplex::new(&self.facets).map_err(err);
        }
        let k = SimplicialComplex::new_oriented(&self.facets).map_err(err)?;
        let n = k.dim();
        let o = k.orientation().expect("oriented");
        let mut agree = None;
        for f in &self.facets {
            let (i, s) = k.oriented_index(f).ok_or_else(|| ParseError::Missing("facet lost".into()))?;
            let same = o[i] == s;
            match agree {
                None => agree = Some(same),
                Some(a) if a != same => return Err(ParseError::Missing("facet orientations are inconsistent".into())),
                _ => {}
            }
            debug_assert_eq!(f.len(), n + 1);
        }
        Ok(if agree == Some(false) { k.with_flipped_orientation() } else { k })
    }

    fn write(&self, out: &mut String) {
        out.push_str("complex\n");
        let _ = writeln!(out, "vertices {}", self.vertices);
        if self.oriented {
            out.push_str("oriented\n");
        }
        for f in &self.facets {
            let _ = writeln!(out, "facet {}", f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        }
        out.push_str("end\n");
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }
}

/// Parses the `complex` block starting at `start` (the `complex` line
/// itself); returns it and the index after its `end`.
fn parse_complex_block(ls: &[(usize, Vec<&str>)], start: usize) -> Result<(ComplexSpec, usize), ParseError> {
    let mut spec = ComplexSpec { vertices: 0, oriented: false, facets: Vec::new() };
    let mut seen_vertices = false;
    let mut facet_lines = Vec::new();
    let mut i = start + 1;
    while i < ls.len() {
        let (line, w) = &ls[i];
        match w[0] {
            "vertices" => {
                spec.vertices = usize_arg(*line, w, 1)?;
                seen_vertices = true;
            }
            "oriented" => spec.oriented = true,
            "facet" => {
                let f: Option<Vec<usize>> = w[1..].iter().map(|x| x.parse().ok()).collect();
                let f = f.filter(|f| !f.is_empty()).ok_or_else(|| at(*line, "facet needs vertex numbers"))?;
                let mut sorted = f.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != f.len() {
                    return Err(at(*line, "facet repeats a vertex"));
                }
                spec.facets.push(f);
                facet_lines.push(*line);
            }
            "end" => {
                i += 1;
                break;
            }
            other => return Err(at(*line, format!("unexpected `{}` in complex", other))),
        }
        i += 1;
    }
    if !seen_vertices {
        return Err(ParseError::Missing("complex needs a `vertices` line".into()));
    }
    if spec.facets.is_empty() {
        return Err(ParseError::Missing("complex has no facets".into()));
    }
    for (f, line) in spec.facets.iter().zip(facet_lines) {
        if let Some(v) = f.iter().find(|&&v| v >= spec.vertices) {
            return Err(at(line, format!("vertex {} out of range (vertices {})", v, spec.vertices)));
        }
    }
    Ok((spec, i))
}

pub fn parse_complex(text: &str) -> Result<ComplexSpec, ParseError> {
    let ls = lines(text);
    match ls.first() {
        Some((_, w)) if w[0] == "complex" => Ok(parse_complex_block(&ls, 0)?.0),
        Some((line, _)) => Err(at(*line, "expected `complex`")),
        None => Err(ParseError::Missing("empty file".into())),
    }
}

/// Header fields shared by the object files.
#[derive(Clone, Debug, Default)]
struct Header {
    degree: Option<usize>,
    depth: Option<usize>,
    model: Option<String>,
    complex: Option<ComplexSpec>,
}

/// Splits an object file into its header and the remaining data lines.
fn parse_object<'a>(text: &'a str, kind: &str) -> Result<(Header, Vec<(usize, Vec<&'a str>)>), ParseError> {
    let ls = lines(text);
    match ls.first() {
        Some((_, w)) if w[0] == kind => {}
        Some((line, _)) => return Err(at(*line, format!("expected `{}`", kind))),
        None => return Err(ParseError::Missing("empty file".into())),
    }
    let mut h = Header::default();
    let mut rest = Vec::new();
    let mut i = 1;
    while i < ls.len() {
        let (line, w) = &ls[i];
        match w[0] {
            "degree" => h.degree = Some(usize_arg(*line, w, 1)?),
            "depth" => h.depth = Some(usize_arg(*line, w, 1)?),
            "model" => h.model = Some(w.get(1).ok_or_else(|| at(*line, "model needs a name"))?.to_string()),
            "complex" => {
                let (c, next) = parse_complex_block(&ls, i)?;
                h.complex = Some(c);
                i = next;
                continue;
            }
            "end" if i + 1 == ls.len() => {}
            _ => rest.push(ls[i].clone()),
        }
        i += 1;
    }
    Ok((h, rest))
}

fn need<T>(x: Option<T>, what: &str) -> Result<T, ParseError> {
    x.ok_or_else(|| ParseError::Missing(format!("missing `{}`", what)))
}

/// A grundle: the Čech total cochain of degree `k` on the star cover at the
/// given depth, keyed by (base simplex, fine simplex) per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrundleFile {
    pub degree: usize,
    pub depth: usize,
    pub complex: ComplexSpec,
    /// `(p, q, base simplex, fine simplex, value)`, nonzero values only.
    pub entries: Vec<(usize, usize, Vec<usize>, Vec<usize>, Rat)>,
}

impl GrundleFile {
    pub fn from_values(tot: &CechTotalComplex, complex: ComplexSpec, degree: usize, values: &[Rat]) -> Self {
        let base = tot.cover.base();
        let fine = tot.cover.fine();
        let mut entries = Vec::new();
        for p in 0..=degree.min(base.dim()) {
            let q = degree - p;
            if q > fine.dim() {
                continue;
            }
            for sigma in 0..base.count(p) {
                for &s in tot.cover.members(p, sigma, q) {
                    let v = &values[tot.index(p, q, sigma, s).expect("member")];
                    if !v.is_zero() {
                        entries.push((p, q, base.simplex(p, sigma).to_vec(), fine.simplex(q, s).to_vec(), v.clone()));
                    }
                }
            }
        }
        GrundleFile { degree, depth: tot.cover.depth(), complex, entries }
    }

    pub fn values(&self, tot: &CechTotalComplex) -> Result<Vec<Rat>, ParseError> {
        let base = tot.cover.base();
        let fine = tot.cover.fine();
        let mut v = tot.zero(self.degree);
        for (p, q, b, f, x) in &self.entries {
            if p + q != self.degree {
                return Err(ParseError::Missing(format!("entry in block ({}, {}) does not have degree {}", p, q, self.degree)));
            }
            let sigma = base.index_of(b).ok_or_else(|| ParseError::Missing(format!("{} is not a base simplex", fmt_verts(b))))?;
            let s = fine.index_of(f).ok_or_else(|| ParseError::Missing(format!("{} is not a fine simplex", fmt_verts(f))))?;
            let i = tot.index(*p, *q, sigma, s).ok_or_else(|| {
                ParseError::Missing(format!("fine simplex {} is not in the intersection {}", fmt_verts(f), fmt_verts(b)))
            })?;
            v[i] = x.clone();
        }
        Ok(v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("grundle\n");
        let _ = writeln!(out, "degree {}", self.degree);
        let _ = writeln!(out, "depth {}", self.depth);
        self.complex.write(&mut out);
        for (p, q, b, f, x) in &self.entries {
            let _ = writeln!(out, "entry {} {} {} {} {}", p, q, fmt_verts(b), fmt_verts(f), fmt_rat(x));
        }
        out
    }
}

pub fn parse_grundle(text: &str) -> Result<GrundleFile, ParseError> {
    let (h, rest) = parse_object(text, "grundle")?;
    let mut entries = Vec::new();
    for (line, w) in rest {
        if w[0] != "entry" || w.len() != 6 {
            return Err(at(line, "expected `entry p q base fine value`"));
        }
        let p = usize_arg(line, &w, 1)?;
        let q = usize_arg(line, &w, 2)?;
        let b = parse_verts(w[3]).ok_or_else(|| at(line, "bad base simplex"))?;
        let f = parse_verts(w[4]).ok_or_else(|| at(line, "bad fine simplex"))?;
        let x = parse_rat(w[5]).ok_or_else(|| at(line, "bad value"))?;
        entries.push((p, q, b, f, x));
    }
    Ok(GrundleFile { degree: need(h.degree, "degree")?, depth: need(h.depth, "depth")?, complex: need(h.complex, "complex")?, entries })
}

/// A spark of one of the models, as a vector in its presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparkFile {
    pub model: ModelKind,
    pub degree: usize,
    pub depth: usize,
    pub complex: ComplexSpec,
    pub values: Vec<(usize, Rat)>,
}

impl SparkFile {
    pub fn new(model: ModelKind, degree: usize, depth: usize, complex: ComplexSpec, dense: &[Rat]) -> Self {
        let values = dense.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        SparkFile { model, degree, depth, complex, values }
    }

    pub fn dense(&self, n: usize) -> Result<Vec<Rat>, ParseError> {
        let mut v = vec![Rat::zero(); n];
        for (i, x) in &self.values {
            *v.get_mut(*i).ok_or_else(|| ParseError::Missing(format!("index {} out of range {}", i, n)))? = x.clone();
        }
        Ok(v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("spark\n");
        let _ = writeln!(out, "model {}", self.model.name());
        let _ = writeln!(out, "degree {}", self.degree);
        let _ = writeln!(out, "depth {}", self.depth);
        self.complex.write(&mut out);
        for (i, x) in &self.values {
            let _ = writeln!(out, "value {} {}", i, fmt_rat(x));
        }
        out
    }
}

pub fn parse_spark(text: &str) -> Result<SparkFile, ParseError> {
    let (h, rest) = parse_object(text, "spark")?;
    let model = need(h.model, "model")?;
    let model = ModelKind::parse(&model).ok_or_else(|| ParseError::Missing(format!("unknown model `{}`", model)))?;
    let mut values = Vec::new();
    for (line, w) in rest {
        if w[0] != "value" || w.len() != 3 {
            return Err(at(line, "expected `value index number`"));
        }
        values.push((usize_arg(line, &w, 1)?, parse_rat(w[2]).ok_or_else(|| at(line, "bad value"))?));
    }
    Ok(SparkFile { model, degree: need(h.degree, "degree")?, depth: need(h.depth, "depth")?, complex: need(h.complex, "complex")?, values })
}

/// An integer cycle on `Sd^depth K` with optional cover labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFile {
    pub degree: usize,
    pub depth: usize,
    /// Oriented simplices (vertex order gives the orientation) with coefficients.
    pub terms: Vec<(Int, Vec<usize>)>,
    /// `(fine simplex, base vertex)`.
    pub labels: Vec<(Vec<usize>, usize)>,
}

impl CycleFile {
    pub fn from_chain(k: &SimplicialComplex, depth: usize, c: &Chain) -> Self {
        let terms = c.terms().map(|(i, x)| (x.clone(), k.simplex(c.degree, i).to_vec())).collect();
        CycleFile { degree: c.degree, depth, terms, labels: Vec::new() }
    }

    pub fn chain(&self, k: &SimplicialComplex) -> Result<Chain, ParseError> {
        let mut c = Chain::zero(self.degree);
        for (x, s) in &self.terms {
            if s.len() != self.degree + 1 {
                return Err(ParseError::Missing(format!("simplex {} has the wrong dimension", fmt_verts(s))));
            }
            let (i, sign) = k.oriented_index(s).ok_or_else(|| ParseError::Missing(format!("{} is not a simplex", fmt_verts(s))))?;
            c.add_term(i, &(x * Int::from(sign)));
        }
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("cycle\n");
        let _ = writeln!(out, "degree {}", self.degree);
        let _ = writeln!(out, "depth {}", self.depth);
        for (x, s) in &self.terms {
            let _ = writeln!(out, "term {} {}", x, fmt_verts(s));
        }
        for (s, a) in &self.labels {
            let _ = writeln!(out, "label {} {}", fmt_verts(s), a);
        }
        out
    }
}

pub fn parse_cycle(text: &str) -> Result<CycleFile, ParseError> {
    let (h, rest) = parse_object(text, "cycle")?;
    let mut terms = Vec::new();
    let mut labels = Vec::new();
    for (line, w) in rest {
        match (w[0], w.len()) {
            ("term", 3) => {
                let x: Int = w[1].parse().map_err(|_| at(line, "bad coefficient"))?;
                terms.push((x, parse_verts(w[2]).ok_or_else(|| at(line, "bad simplex"))?));
            }
            ("label", 3) => {
                labels.push((parse_verts(w[1]).ok_or_else(|| at(line, "bad simplex"))?, usize_arg(line, &w, 2)?));
            }
            _ => return Err(at(line, "expected `term coeff simplex` or `label simplex vertex`")),
        }
    }
    Ok(CycleFile { degree: need(h.degree, "degree")?, depth: need(h.depth, "depth")?, terms, labels })
}

/// A rational cochain on `Sd^depth K`, by oriented simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainFile {
    pub degree: usize,
    pub depth: usize,
    pub entries: Vec<(Vec<usize>, Rat)>,
}

impl CochainFile {
    pub fn from_values(k: &SimplicialComplex, degree: usize, depth: usize, v: &[Rat]) -> Self {
        let entries = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (k.simplex(degree, i).to_vec(), x.clone())).collect();
        CochainFile { degree, depth, entries }
    }

    pub fn values(&self, k: &SimplicialComplex) -> Result<Vec<Rat>, ParseError> {
        if self.degree > k.dim() {
            return Err(ParseError::Missing(format!("degree {} exceeds the dimension", self.degree)));
        }
        let mut v = vec![Rat::zero(); k.count(self.degree)];
        for (s, x) in &self.entries {
            if s.len() != self.degree + 1 {
                return Err(ParseError::Missing(format!("simplex {} has the wrong dimension", fmt_verts(s))));
            }
            let (i, sign) = k.oriented_index(s).ok_or_else(|| ParseError::Missing(format!("{} is not a simplex", fmt_verts(s))))?;
            v[i] += x * Rat::from_integer(sign.into());
        }
        Ok(v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("cochain\n");
        let _ = writeln!(out, "degree {}", self.degree);
        let _ = writeln!(out, "depth {}", self.depth);
        for (s, x) in &self.entries {
            let _ = writeln!(out, "entry {} {}", fmt_verts(s), fmt_rat(x));
        }
        out
    }
}

pub fn parse_cochain(text: &str) -> Result<CochainFile, ParseError> {
    let (h, rest) = parse_object(text, "cochain")?;
    let mut entries = Vec::new();
    for (line, w) in rest {
        if w[0] != "entry" || w.len() != 3 {
            return Err(at(line, "expected `entry simplex value`"));
        }
        entries.push((parse_verts(w[1]).ok_or_else(|| at(line, "bad simplex"))?, parse_rat(w[2]).ok_or_else(|| at(line, "bad value"))?));
    }
    Ok(CochainFile { degree: need(h.degree, "degree")?, depth: need(h.depth, "depth")?, entries })
}

/// Equivalence witness: named sparse vectors (`b`, `s`, and `h` for grundles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFile {
    /// `grundle` or the model name.
    pub kind: String,
    pub degree: usize,
    pub vectors: Vec<(String, usize, Vec<(usize, Rat)>)>,
}

impl WitnessFile {
    pub fn new(kind: &str, degree: usize) -> Self {
        WitnessFile { kind: kind.into(), degree, vectors: Vec::new() }
    }

    pub fn push(&mut self, name: &str, v: &[Rat]) {
        let sparse = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        self.vectors.push((name.into(), v.len(), sparse));
    }

    pub fn get(&self, name: &str) -> Option<Vec<Rat>> {
        let (_, n, sparse) = self.vectors.iter().find(|(m, _, _)| m == name)?;
        let mut v = vec![Rat::zero(); *n];
        for (i, x) in sparse {
            v[*i] = x.clone();
        }
        Some(v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("witness\n");
        let _ = writeln!(out, "kind {}", self.kind);
        let _ = writeln!(out, "degree {}", self.degree);
        for (name, n, sparse) in &self.vectors {
            let _ = writeln!(out, "vector {} {}", name, n);
            for (i, x) in sparse {
                let _ = writeln!(out, "{} {} {}", name, i, fmt_rat(x));
            }
        }
        out
    }
}

pub fn parse_witness(text: &str) -> Result<WitnessFile, ParseError> {
    let ls = lines(text);
    match ls.first() {
        Some((_, w)) if w[0] == "witness" => {}
        _ => return Err(ParseError::Missing("expected `witness`".into())),
    }
    let mut kind = None;
    let mut degree = None;
    let mut vectors: Vec<(String, usize, Vec<(usize, Rat)>)> = Vec::new();
    for (line, w) in &ls[1..] {
        match (w[0], w.len()) {
            ("kind", 2) => kind = Some(w[1].to_string()),
            ("degree", 2) => degree = Some(usize_arg(*line, w, 1)?),
            ("vector", 3) => vectors.push((w[1].to_string(), usize_arg(*line, w, 2)?, Vec::new())),
            (name, 3) => {
                let v = vectors.iter_mut().find(|(n, _, _)| n == name).ok_or_else(|| at(*line, format!("undeclared vector `{}`", name)))?;
                let i = usize_arg(*line, w, 1)?;
                if i >= v.1 {
                    return Err(at(*line, "index out of range"));
                }
                v.2.push((i, parse_rat(w[2]).ok_or_else(|| at(*line, "bad value"))?));
            }
            _ => return Err(at(*line, "unexpected line in witness")),
        }
    }
    Ok(WitnessFile { kind: need(kind, "kind")?, degree: need(degree, "degree")?, vectors })
}

/// Sniffs the object kind from the first meaningful line.
pub fn file_kind(text: &str) -> Option<String> {
    lines(text).first().map(|(_, w)| w[0].to_string())
}

pub fn fmt_vec(v: &[Rat]) -> String {
    format!("[{}]", v.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
}

pub fn fmt_ints(v: &[Int]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}
