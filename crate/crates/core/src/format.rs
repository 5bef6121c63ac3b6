//! Line-oriented text formats for groups, subsets, instances, graphs,
//! certificates, colourings and pipelines. Every `write_*` output parses back
//! to an equal value and re-serializes to the same bytes.

use std::fmt::Write as _;

use crate::abelian::{FiniteAbelianGroup, GroupElement, Homomorphism, IntMatrix, SubgroupGens};
use crate::compiler::{Claim, ReductionPipeline, Variant};
use crate::error::{Error, Result};
use crate::problem::{Certificate, ProblemInstance, SubsetS};
use crate::reductions::{Graph, ReductionStep};

const PIPELINE_HEADER: &str = "# cosetsat reduction pipeline";

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::parse(line, msg)
}

/// Lines with `#` comments stripped, paired with 1-based line numbers;
/// blank lines are dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_int(s: &str, line: usize) -> Result<i64> {
    s.trim().parse::<i64>().map_err(|_| perr(line, format!("expected an integer, got {s:?}")))
}

// ---- groups and elements ----

/// `d1,d2,...,dk`; the empty string is the trivial group.
pub fn write_group(g: &FiniteAbelianGroup) -> String {
    g.moduli().iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_group(s: &str) -> Result<FiniteAbelianGroup> {
    parse_group_at(s, 1)
}

fn parse_group_at(s: &str, line: usize) -> Result<FiniteAbelianGroup> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let moduli = s.split(',').map(|x| parse_int(x, line)).collect::<Result<Vec<_>>>()?;
    FiniteAbelianGroup::new(moduli).map_err(|e| perr(line, e.to_string()))
}

pub fn write_element(x: &GroupElement) -> String {
    x.to_string()
}

fn parse_element_at(s: &str, g: &FiniteAbelianGroup, line: usize) -> Result<GroupElement> {
    let s = s.trim();
    let inner = if let Some(rest) = s.strip_prefix('(') {
        rest.strip_suffix(')').ok_or_else(|| perr(line, format!("unclosed element {s:?}")))?
    } else if g.is_presented_cyclic() {
        s
    } else {
        return Err(perr(line, format!("expected a parenthesized element, got {s:?}")));
    };
    let coords = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|x| parse_int(x, line)).collect::<Result<Vec<_>>>()?
    };
    g.element(&coords).map_err(|e| perr(line, e.to_string()))
}

pub fn parse_element(s: &str, g: &FiniteAbelianGroup) -> Result<GroupElement> {
    parse_element_at(s, g, 1)
}

/// Splits `a,b,(c,d)` at top-level commas.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses `{x,y,...}` keeping the written order.
fn parse_element_list_at(s: &str, g: &FiniteAbelianGroup, line: usize, open: char, close: char) -> Result<Vec<GroupElement>> {
    let s = s.trim();
    let inner = s
        .strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| perr(line, format!("expected {open}...{close}, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(inner).into_iter().map(|x| parse_element_at(x, g, line)).collect()
}

fn write_element_list(xs: &[GroupElement], open: char, close: char) -> String {
    let parts: Vec<String> = xs.iter().map(write_element).collect();
    format!("{open}{}{close}", parts.join(","))
}

// ---- subsets ----

/// `{0,1}` for a cyclic group, `{(0,1),(1,0)}` otherwise.
pub fn write_subset(s: &SubsetS) -> String {
    format!("{s}\n")
}

/// A braced list, or one element per line. Bare integers are accepted for
/// cyclic groups.
pub fn parse_subset(text: &str, g: &FiniteAbelianGroup) -> Result<SubsetS> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let elems = match lines.first() {
        None => Vec::new(),
        Some((line, first)) if first.starts_with('{') => {
            let joined: String = lines.iter().map(|(_, l)| *l).collect::<Vec<_>>().join("");
            parse_element_list_at(&joined, g, *line, '{', '}')?
        }
        Some(_) => lines.iter().map(|(line, l)| parse_element_at(l, g, *line)).collect::<Result<Vec<_>>>()?,
    };
    SubsetS::new(g.clone(), elems).map_err(|e| perr(1, e.to_string()))
}

// ---- instances ----

fn write_tuple(xs: &[GroupElement]) -> String {
    xs.iter().map(write_element).collect::<Vec<_>>().join(" ")
}

fn keyed_line(key: &str, value: &str) -> String {
    if value.is_empty() {
        format!("{key}:\n")
    } else {
        format!("{key}: {value}\n")
    }
}

pub fn write_instance(inst: &ProblemInstance) -> String {
    let mut out = String::new();
    out.push_str(&keyed_line("group", &write_group(inst.group())));
    out.push_str(&keyed_line("t", &inst.t().to_string()));
    out.push_str(&keyed_line("xstar", &write_tuple(inst.xstar())));
    for h in inst.hgens() {
        out.push_str(&keyed_line("gen", &write_tuple(h)));
    }
    out
}

fn parse_tuple(s: &str, g: &FiniteAbelianGroup, line: usize) -> Result<Vec<GroupElement>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if g.rank() == 0 {
        // elements of the trivial group are "()", no separators needed
        return s.split_whitespace().map(|x| parse_element_at(x, g, line)).collect();
    }
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let (tok, tail) = if rest.starts_with('(') {
            let end = rest.find(')').ok_or_else(|| perr(line, "unclosed element"))?;
            (&rest[..=end], &rest[end + 1..])
        } else {
            match rest.find(char::is_whitespace) {
                Some(i) => (&rest[..i], &rest[i..]),
                None => (rest, ""),
            }
        };
        out.push(parse_element_at(tok, g, line)?);
        rest = tail.trim_start();
    }
    Ok(out)
}

fn split_key(l: &str, line: usize) -> Result<(&str, &str)> {
    let (k, v) = l.split_once(':').ok_or_else(|| perr(line, format!("expected `key: value`, got {l:?}")))?;
    Ok((k.trim(), v.trim()))
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let mut group = None;
    let mut t = None;
    let mut xstar = None;
    let mut hgens = Vec::new();
    let mut last_line = 0;
    for (line, l) in content_lines(text) {
        last_line = line;
        let (k, v) = split_key(l, line)?;
        match k {
            "group" => group = Some(parse_group_at(v, line)?),
            "t" => {
                t = Some(v.parse::<usize>().map_err(|_| perr(line, format!("bad t {v:?}")))?);
            }
            "xstar" | "gen" => {
                let g = group.as_ref().ok_or_else(|| perr(line, "group must come first"))?;
                let tuple = parse_tuple(v, g, line)?;
                let want = t.ok_or_else(|| perr(line, "t must come before xstar and gen"))?;
                if tuple.len() != want {
                    return Err(perr(line, format!("expected {want} elements, got {}", tuple.len())));
                }
                if k == "xstar" {
                    if xstar.is_some() {
                        return Err(perr(line, "duplicate xstar"));
                    }
                    xstar = Some(tuple);
                } else {
                    hgens.push(tuple);
                }
            }
            other => return Err(perr(line, format!("unknown key {other:?}"))),
        }
    }
    let group = group.ok_or_else(|| perr(last_line, "missing group"))?;
    let t = t.ok_or_else(|| perr(last_line, "missing t"))?;
    let xstar = match xstar {
        Some(x) => x,
        None if t == 0 => Vec::new(),
        None => return Err(perr(last_line, "missing xstar")),
    };
    ProblemInstance::new(group, xstar, hgens).map_err(|e| perr(last_line, e.to_string()))
}

// ---- graphs, certificates, colourings ----

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edges().len());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (line, l) in content_lines(text) {
        last_line = line;
        let toks: Vec<&str> = l.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| perr(line, format!("expected a count, got {s:?}")));
        match toks.as_slice() {
            ["c", ..] => {}
            ["p", "edge", n, m] | ["p", "col", n, m] => {
                if header.is_some() {
                    return Err(perr(line, "duplicate problem line"));
                }
                header = Some((num(n)?, num(m)?));
            }
            ["e", u, v] => {
                if header.is_none() {
                    return Err(perr(line, "edge before the problem line"));
                }
                edges.push((num(u)?, num(v)?));
            }
            _ => return Err(perr(line, format!("unrecognized line {l:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| perr(last_line.max(1), "missing `p edge N M` line"))?;
    if edges.len() != m {
        return Err(perr(last_line, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges).map_err(|e| perr(last_line, e.to_string()))
}

pub fn write_certificate(c: &Certificate) -> String {
    let parts: Vec<String> = c.0.iter().map(i64::to_string).collect();
    keyed_line("cert", &parts.join(" "))
}

/// `cert: c1 c2 ...`, or just the integers.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        let body = l.strip_prefix("cert:").unwrap_or(l);
        for tok in body.split_whitespace() {
            out.push(parse_int(tok, line)?);
        }
    }
    Ok(Certificate(out))
}

pub fn write_coloring(colors: &[usize]) -> String {
    let parts: Vec<String> = colors.iter().map(usize::to_string).collect();
    format!("{}\n", parts.join(" "))
}

/// Whitespace-separated colours of vertices `1..=n`.
pub fn parse_coloring(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        for tok in l.split_whitespace() {
            out.push(tok.parse::<usize>().map_err(|_| perr(line, format!("bad colour {tok:?}")))?);
        }
    }
    Ok(out)
}

// ---- pipelines ----

fn write_matrix(m: &IntMatrix<i64>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn parse_matrix(s: &str, rows: usize, cols: usize, line: usize) -> Result<IntMatrix<i64>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr(line, format!("expected a matrix, got {s:?}")))?;
    let mut out = Vec::new();
    if !inner.is_empty() {
        for r in split_top(inner) {
            let body = r
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| perr(line, format!("expected a matrix row, got {r:?}")))?;
            let row = if body.is_empty() {
                Vec::new()
            } else {
                body.split(',').map(|x| parse_int(x, line)).collect::<Result<Vec<_>>>()?
            };
            if row.len() != cols {
                return Err(perr(line, format!("matrix row has {} entries, expected {cols}", row.len())));
            }
            out.push(row);
        }
    }
    if out.len() != rows {
        return Err(perr(line, format!("matrix has {} rows, expected {rows}", out.len())));
    }
    IntMatrix::from_rows(out, cols).map_err(|e| perr(line, e.to_string()))
}

fn write_set(s: &SubsetS) -> String {
    write_element_list(s.elements(), '{', '}')
}

fn write_step(step: &ReductionStep) -> String {
    let name = step.name();
    let params = match step {
        ReductionStep::KColFrom3Col { k } => format!("k={k}"),
        ReductionStep::GadgetS01 { n } => format!("n={n}"),
        ReductionStep::GadgetColoringFull { group } => format!("group={}", write_group(group)),
        ReductionStep::Translate { group, g } => format!("group={} g={}", write_group(group), write_element(g)),
        ReductionStep::MapThrough { hom } => format!(
            "source={} target={} matrix={}",
            write_group(hom.source()),
            write_group(hom.target()),
            write_matrix(hom.matrix())
        ),
        ReductionStep::DivideOutLift { kernel } => format!(
            "group={} kernel={}",
            write_group(kernel.ambient()),
            write_element_list(kernel.gens(), '[', ']')
        ),
        ReductionStep::TransformDouble { c, g } => {
            format!("group={} c={} g={}", write_group(c.source()), write_matrix(c.matrix()), write_element(g))
        }
        ReductionStep::PFromPi => String::new(),
        ReductionStep::PiFromP { group, order } => {
            format!("group={} subset={}", write_group(group), write_element_list(order, '{', '}'))
        }
    };
    if params.is_empty() {
        format!("step: {name}")
    } else {
        format!("step: {name} {params}")
    }
}

fn write_claim(c: &Claim) -> String {
    let group = |s: &SubsetS| write_group(s.group());
    let params = match c {
        Claim::Coset { set, holds } => format!("group={} set={} holds={holds}", group(set), write_set(set)),
        Claim::Member { set, x, holds } => {
            format!("group={} set={} x={} holds={holds}", group(set), write_set(set), write_element(x))
        }
        Claim::Subset { small, big } => {
            format!("group={} small={} big={}", group(small), write_set(small), write_set(big))
        }
        Claim::Periodic { set, by } => format!("group={} set={} by={}", group(set), write_set(set), write_element(by)),
        Claim::SetEq { left, right } => {
            format!("group={} left={} right={}", group(left), write_set(left), write_set(right))
        }
        Claim::Pattern { set, g, a, b } => format!(
            "group={} set={} g={} a={} b={}",
            group(set),
            write_set(set),
            write_element(g),
            write_element(a),
            write_element(b)
        ),
        Claim::ThetaFixed { set } => format!("group={} set={}", group(set), write_set(set)),
        Claim::Measure { before, after } => format!("before={before} after={after}"),
    };
    format!("assert: {} {params}", c.kind())
}

pub fn write_pipeline(p: &ReductionPipeline) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{PIPELINE_HEADER}");
    let variant = match p.variant {
        Variant::P => "P",
        Variant::Pi => "Pi",
    };
    let _ = writeln!(out, "target: group={} subset={} variant={variant}", write_group(&p.group), write_set(&p.subset));
    for s in &p.steps {
        let _ = writeln!(out, "{}", write_step(s));
    }
    for c in &p.trace {
        let _ = writeln!(out, "{}", write_claim(c));
    }
    out
}

/// `name k=v k=v ...` with values in a fixed order.
struct Params<'a> {
    line: usize,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn new(toks: &[&'a str], line: usize) -> Result<Self> {
        let pairs = toks
            .iter()
            .map(|t| t.split_once('=').ok_or_else(|| perr(line, format!("expected key=value, got {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Params { line, pairs })
    }

    fn get(&self, key: &str) -> Result<&'a str> {
        self.pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| perr(self.line, format!("missing parameter {key}")))
    }

    fn expect_keys(&self, keys: &[&str]) -> Result<()> {
        let found: Vec<&str> = self.pairs.iter().map(|(k, _)| *k).collect();
        if found != keys {
            return Err(perr(self.line, format!("expected parameters {keys:?}, got {found:?}")));
        }
        Ok(())
    }

    fn group(&self, key: &str) -> Result<FiniteAbelianGroup> {
        parse_group_at(self.get(key)?, self.line)
    }

    fn element(&self, key: &str, g: &FiniteAbelianGroup) -> Result<GroupElement> {
        parse_element_at(self.get(key)?, g, self.line)
    }

    fn set(&self, key: &str, g: &FiniteAbelianGroup) -> Result<SubsetS> {
        let elems = parse_element_list_at(self.get(key)?, g, self.line, '{', '}')?;
        SubsetS::new(g.clone(), elems).map_err(|e| perr(self.line, e.to_string()))
    }

    fn int<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.get(key)?;
        v.parse::<T>().map_err(|_| perr(self.line, format!("bad value {v:?} for {key}")))
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.get(key)? {
            "true" => Ok(true),
            "false" => Ok(false),
            v => Err(perr(self.line, format!("bad boolean {v:?} for {key}"))),
        }
    }
}

fn tokens(body: &str) -> Vec<&str> {
    body.split_whitespace().collect()
}

/// Parses the text after `step:`.
fn parse_step_body(body: &str, line: usize) -> Result<ReductionStep> {
    let toks = tokens(body);
    let (name, rest) = toks.split_first().ok_or_else(|| perr(line, "empty step"))?;
    let p = Params::new(rest, line)?;
    let wrap = |e: Error| perr(line, e.to_string());
    let step = match *name {
        "kcol-from-3col" => {
            p.expect_keys(&["k"])?;
            ReductionStep::KColFrom3Col { k: p.int("k")? }
        }
        "gadget-s01" => {
            p.expect_keys(&["n"])?;
            ReductionStep::GadgetS01 { n: p.int("n")? }
        }
        "gadget-coloring-full" => {
            p.expect_keys(&["group"])?;
            ReductionStep::GadgetColoringFull { group: p.group("group")? }
        }
        "translate" => {
            p.expect_keys(&["group", "g"])?;
            let group = p.group("group")?;
            let g = p.element("g", &group)?;
            ReductionStep::Translate { group, g }
        }
        "map-through" => {
            p.expect_keys(&["source", "target", "matrix"])?;
            let (src, tgt) = (p.group("source")?, p.group("target")?);
            let m = parse_matrix(p.get("matrix")?, tgt.rank(), src.rank(), line)?;
            ReductionStep::MapThrough { hom: Homomorphism::new(src, tgt, m).map_err(wrap)? }
        }
        "divide-out-lift" => {
            p.expect_keys(&["group", "kernel"])?;
            let group = p.group("group")?;
            let gens = parse_element_list_at(p.get("kernel")?, &group, line, '[', ']')?;
            ReductionStep::DivideOutLift { kernel: SubgroupGens::new(group, gens).map_err(wrap)? }
        }
        "transform-double" => {
            p.expect_keys(&["group", "c", "g"])?;
            let group = p.group("group")?;
            let m = parse_matrix(p.get("c")?, group.rank(), group.rank(), line)?;
            let c = Homomorphism::new(group.clone(), group.clone(), m).map_err(wrap)?;
            let g = p.element("g", &group)?;
            ReductionStep::TransformDouble { c, g }
        }
        "p-from-pi" => {
            p.expect_keys(&[])?;
            ReductionStep::PFromPi
        }
        "pi-from-p" => {
            p.expect_keys(&["group", "subset"])?;
            let group = p.group("group")?;
            let order = parse_element_list_at(p.get("subset")?, &group, line, '{', '}')?;
            ReductionStep::PiFromP { group, order }
        }
        other => return Err(perr(line, format!("unknown step {other:?}"))),
    };
    Ok(step)
}

/// Parses a single `step: ...` line (the prefix is optional).
pub fn parse_step(text: &str) -> Result<ReductionStep> {
    let (line, l) = content_lines(text).next().ok_or_else(|| perr(1, "no step given"))?;
    parse_step_body(l.strip_prefix("step:").unwrap_or(l), line)
}

pub fn write_step_line(step: &ReductionStep) -> String {
    format!("{}\n", write_step(step))
}

fn parse_claim_body(body: &str, line: usize) -> Result<Claim> {
    let toks = tokens(body);
    let (kind, rest) = toks.split_first().ok_or_else(|| perr(line, "empty assertion"))?;
    let p = Params::new(rest, line)?;
    let claim = match *kind {
        "measure" => {
            p.expect_keys(&["before", "after"])?;
            Claim::Measure { before: p.int("before")?, after: p.int("after")? }
        }
        _ => {
            let g = p.group("group")?;
            match *kind {
                "coset" => {
                    p.expect_keys(&["group", "set", "holds"])?;
                    Claim::Coset { set: p.set("set", &g)?, holds: p.flag("holds")? }
                }
                "member" => {
                    p.expect_keys(&["group", "set", "x", "holds"])?;
                    Claim::Member { set: p.set("set", &g)?, x: p.element("x", &g)?, holds: p.flag("holds")? }
                }
                "subset" => {
                    p.expect_keys(&["group", "small", "big"])?;
                    Claim::Subset { small: p.set("small", &g)?, big: p.set("big", &g)? }
                }
                "periodic" => {
                    p.expect_keys(&["group", "set", "by"])?;
                    Claim::Periodic { set: p.set("set", &g)?, by: p.element("by", &g)? }
                }
                "set-eq" => {
                    p.expect_keys(&["group", "left", "right"])?;
                    Claim::SetEq { left: p.set("left", &g)?, right: p.set("right", &g)? }
                }
                "pattern" => {
                    p.expect_keys(&["group", "set", "g", "a", "b"])?;
                    Claim::Pattern {
                        set: p.set("set", &g)?,
                        g: p.element("g", &g)?,
                        a: p.element("a", &g)?,
                        b: p.element("b", &g)?,
                    }
                }
                "theta-fixed" => {
                    p.expect_keys(&["group", "set"])?;
                    Claim::ThetaFixed { set: p.set("set", &g)? }
                }
                other => return Err(perr(line, format!("unknown assertion {other:?}"))),
            }
        }
    };
    Ok(claim)
}

pub fn parse_pipeline(text: &str) -> Result<ReductionPipeline> {
    let mut target = None;
    let mut steps = Vec::new();
    let mut trace = Vec::new();
    let mut last_line = 1;
    for (line, l) in content_lines(text) {
        last_line = line;
        let (k, v) = split_key(l, line)?;
        match k {
            "target" => {
                if target.is_some() {
                    return Err(perr(line, "duplicate target line"));
                }
                let p = Params::new(&tokens(v), line)?;
                p.expect_keys(&["group", "subset", "variant"])?;
                let g = p.group("group")?;
                let s = p.set("subset", &g)?;
                let variant = match p.get("variant")? {
                    "P" => Variant::P,
                    "Pi" => Variant::Pi,
                    other => return Err(perr(line, format!("unknown variant {other:?}"))),
                };
                target = Some((g, s, variant));
            }
            "step" => steps.push(parse_step_body(v, line)?),
            "assert" => trace.push(parse_claim_body(v, line)?),
            other => return Err(perr(line, format!("unknown key {other:?}"))),
        }
    }
    let (group, subset, variant) = target.ok_or_else(|| perr(last_line, "missing target line"))?;
    Ok(ReductionPipeline { group, subset, variant, steps, trace })
}
