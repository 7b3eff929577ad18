//! Text formats for every value in the crate.
//!
//! | kind   | header                  | body                                   |
//! |--------|-------------------------|----------------------------------------|
//! | bnn    | `bnn <n>`               | `+ <bits>` / `- <bits>` per prototype  |
//! | mods   | `mods <n>`              | one `<bits>` per model                 |
//! | bdd    | `bdd <n> <count> <root>`| `<id> <var> <lo> <hi>`; `T0`/`T1` terminals |
//! | graph  | `graph <vertices>`      | `<u> <v>` per edge                     |
//! | cnf    | `p cnf <vars> <clauses>`| DIMACS clauses terminated by `0`       |
//! | term, clause | none              | signed integers, optional `0`          |
//!
//! Lines starting with `#` are comments in every format (`c` lines too in
//! DIMACS). Serialization is canonical: sorted sets, LF endings, no
//! trailing whitespace, no comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::bits::BoolVec;
use crate::compile::{Bdd, BddNode, Edge};
use crate::error::{Error, Result};
use crate::families::{Cnf3, Graph};
use crate::queries::{Clause, Literal, Term};
use crate::rep::{BnnRep, FunctionTable, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Bnn,
    Mods,
    Bdd,
    Graph,
    Cnf,
    Term,
    Clause,
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bnn" => Kind::Bnn,
            "mods" => Kind::Mods,
            "bdd" => Kind::Bdd,
            "graph" => Kind::Graph,
            "cnf" => Kind::Cnf,
            "term" => Kind::Term,
            "clause" => Kind::Clause,
            _ => return Err(Error::InvalidParameter(format!("unknown format {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Bnn(BnnRep),
    Mods(FunctionTable),
    Bdd(Bdd),
    Graph(Graph),
    Cnf(Cnf3),
    Term(Term),
    Clause(Clause),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Bnn(_) => Kind::Bnn,
            Document::Mods(_) => Kind::Mods,
            Document::Bdd(_) => Kind::Bdd,
            Document::Graph(_) => Kind::Graph,
            Document::Cnf(_) => Kind::Cnf,
            Document::Term(_) => Kind::Term,
            Document::Clause(_) => Kind::Clause,
        }
    }
}

/// Guesses the kind of a headed document from its first significant line.
pub fn detect_kind(text: &str) -> Option<Kind> {
    let (_, toks) = Lines::new(text, false).next()?;
    match toks.first()?.1 {
        "bnn" => Some(Kind::Bnn),
        "mods" => Some(Kind::Mods),
        "bdd" => Some(Kind::Bdd),
        "graph" => Some(Kind::Graph),
        "p" => Some(Kind::Cnf),
        _ => None,
    }
}

pub fn parse(kind: Kind, text: &str, limits: &Limits) -> Result<Document> {
    Ok(match kind {
        Kind::Bnn => Document::Bnn(parse_bnn(text, limits)?),
        Kind::Mods => Document::Mods(parse_mods(text, limits)?),
        Kind::Bdd => Document::Bdd(parse_bdd(text, limits)?),
        Kind::Graph => Document::Graph(parse_graph(text)?),
        Kind::Cnf => Document::Cnf(parse_cnf(text)?),
        Kind::Term => Document::Term(Term::new(parse_literals(text)?)?),
        Kind::Clause => Document::Clause(Clause::new(parse_literals(text)?)?),
    })
}

pub fn serialize(doc: &Document) -> String {
    match doc {
        Document::Bnn(r) => write_bnn(r),
        Document::Mods(m) => write_mods(m),
        Document::Bdd(b) => write_bdd(b),
        Document::Graph(g) => write_graph(g),
        Document::Cnf(c) => write_cnf(c),
        Document::Term(t) => format!("{t}\n"),
        Document::Clause(c) => format!("{c}\n"),
    }
}

type Token<'a> = (usize, &'a str);

/// Significant lines as `(line number, tokens with 1-based columns)`.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    dimacs: bool,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, dimacs: bool) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            dimacs,
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<Token<'a>>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, line) in self.inner.by_ref() {
            let trimmed = line.trim_start();
            if trimmed.is_empty()
                || trimmed.starts_with('#')
                || (self.dimacs && (trimmed == "c" || trimmed.starts_with("c ")))
            {
                continue;
            }
            let mut toks = Vec::new();
            let mut start = None;
            for (pos, ch) in line
                .char_indices()
                .chain(std::iter::once((line.len(), ' ')))
            {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        toks.push((s + 1, &line[s..pos]));
                        start = None;
                    }
                    _ => {}
                }
            }
            return Some((i + 1, toks));
        }
        None
    }
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn invariant(line: usize, message: impl Into<String>) -> Error {
    Error::InvariantViolation {
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(line: usize, tok: Token, what: &str) -> Result<T> {
    tok.1
        .parse()
        .map_err(|_| syntax(line, tok.0, format!("expected {what}, found {:?}", tok.1)))
}

fn arity(line: usize, toks: &[Token], expected: usize, shape: &str) -> Result<()> {
    if toks.len() != expected {
        let col = toks.get(expected).or(toks.last()).map_or(1, |t| t.0);
        return Err(syntax(line, col, format!("expected `{shape}`")));
    }
    Ok(())
}

fn bits(line: usize, tok: Token, n: usize) -> Result<BoolVec> {
    let v: BoolVec = tok.1.parse().map_err(|e: crate::bits::ParseBitsError| {
        syntax(line, tok.0 + e.offset, "expected a bitstring")
    })?;
    if v.len() != n {
        return Err(syntax(
            line,
            tok.0,
            format!("bitstring has length {}, expected {n}", v.len()),
        ));
    }
    Ok(v)
}

/// Reads `<keyword> <args...>` and returns the numeric arguments.
fn header(lines: &mut Lines, keyword: &str, args: &[&str]) -> Result<(usize, Vec<usize>)> {
    let shape = std::iter::once(keyword)
        .chain(args.iter().copied())
        .collect::<Vec<_>>()
        .join(" ");
    let (line, toks) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, format!("missing header `{shape}`")))?;
    if toks[0].1 != keyword {
        return Err(syntax(
            line,
            toks[0].0,
            format!("expected header `{shape}`"),
        ));
    }
    arity(line, &toks, args.len() + 1, &shape)?;
    let nums = toks[1..]
        .iter()
        .zip(args)
        .map(|(&t, what)| number(line, t, what))
        .collect::<Result<Vec<usize>>>()?;
    Ok((line, nums))
}

fn dimension(line: usize, n: usize, max: usize) -> Result<usize> {
    if n == 0 {
        return Err(invariant(line, "dimension must be at least 1"));
    }
    if n > max {
        return Err(invariant(
            line,
            format!("dimension {n} exceeds the limit of {max}"),
        ));
    }
    Ok(n)
}

pub fn parse_bnn(text: &str, limits: &Limits) -> Result<BnnRep> {
    let mut lines = Lines::new(text, false);
    let (hline, h) = header(&mut lines, "bnn", &["<n>"])?;
    let n = dimension(hline, h[0], limits.n_max)?;
    let mut seen: BTreeMap<BoolVec, bool> = BTreeMap::new();
    let mut last = hline;
    for (line, toks) in lines {
        last = line;
        arity(line, &toks, 2, "+ <bits>` or `- <bits>")?;
        let positive = match toks[0].1 {
            "+" => true,
            "-" => false,
            other => {
                return Err(syntax(
                    line,
                    toks[0].0,
                    format!("expected `+` or `-`, found {other:?}"),
                ))
            }
        };
        let v = bits(line, toks[1], n)?;
        if let Some(&prev) = seen.get(&v) {
            if prev != positive {
                return Err(invariant(
                    line,
                    format!("prototype {v} occurs in both P and N"),
                ));
            }
        }
        seen.insert(v, positive);
    }
    let (pos, neg): (Vec<_>, Vec<_>) = seen.into_iter().partition(|(_, p)| *p);
    BnnRep::new(
        n,
        pos.into_iter().map(|(v, _)| v),
        neg.into_iter().map(|(v, _)| v),
    )
    .map_err(|e| invariant(last, e.to_string()))
}

pub fn write_bnn(rep: &BnnRep) -> String {
    let mut out = format!("bnn {}\n", rep.n());
    for p in rep.positives() {
        let _ = writeln!(out, "+ {p}");
    }
    for q in rep.negatives() {
        let _ = writeln!(out, "- {q}");
    }
    out
}

pub fn parse_mods(text: &str, limits: &Limits) -> Result<FunctionTable> {
    let mut lines = Lines::new(text, false);
    let (hline, h) = header(&mut lines, "mods", &["<n>"])?;
    let n = dimension(hline, h[0], limits.exh_max)?;
    let mut models = Vec::new();
    for (line, toks) in lines {
        arity(line, &toks, 1, "<bits>")?;
        models.push(bits(line, toks[0], n)?);
    }
    FunctionTable::new(n, models, limits).map_err(|e| invariant(hline, e.to_string()))
}

pub fn write_mods(m: &FunctionTable) -> String {
    let mut out = format!("mods {}\n", m.n());
    for x in m.models() {
        let _ = writeln!(out, "{x}");
    }
    out
}

fn edge(line: usize, tok: Token) -> Result<Edge> {
    match tok.1 {
        "T0" => Ok(Edge::Terminal(false)),
        "T1" => Ok(Edge::Terminal(true)),
        _ => number(line, tok, "a node id or T0/T1").map(Edge::Node),
    }
}

fn edge_str(e: Edge) -> String {
    match e {
        Edge::Terminal(false) => "T0".into(),
        Edge::Terminal(true) => "T1".into(),
        Edge::Node(id) => id.to_string(),
    }
}

pub fn parse_bdd(text: &str, limits: &Limits) -> Result<Bdd> {
    let mut lines = Lines::new(text, false);
    let (hline, htoks) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "missing header `bdd <n> <node-count> <root>`"))?;
    if htoks[0].1 != "bdd" {
        return Err(syntax(
            hline,
            htoks[0].0,
            "expected header `bdd <n> <node-count> <root>`",
        ));
    }
    arity(hline, &htoks, 4, "bdd <n> <node-count> <root>")?;
    let n = dimension(hline, number(hline, htoks[1], "<n>")?, limits.n_max)?;
    let count: usize = number(hline, htoks[2], "<node-count>")?;
    let root = edge(hline, htoks[3])?;
    let mut slots: Vec<Option<BddNode>> = vec![None; count];
    for (line, toks) in lines {
        arity(line, &toks, 4, "<id> <var> <lo> <hi>")?;
        let id: usize = number(line, toks[0], "a node id")?;
        let var: usize = number(line, toks[1], "a variable index")?;
        let node = BddNode {
            var,
            lo: edge(line, toks[2])?,
            hi: edge(line, toks[3])?,
        };
        match slots.get_mut(id) {
            None => {
                return Err(invariant(
                    line,
                    format!("node id {id} not below node count {count}"),
                ))
            }
            Some(Some(_)) => return Err(invariant(line, format!("duplicate node id {id}"))),
            Some(slot) => *slot = Some(node),
        }
    }
    let nodes = slots
        .into_iter()
        .enumerate()
        .map(|(id, s)| s.ok_or_else(|| invariant(hline, format!("node {id} is missing"))))
        .collect::<Result<Vec<_>>>()?;
    Bdd::new(n, nodes, root).map_err(|e| invariant(hline, e.to_string()))
}

pub fn write_bdd(b: &Bdd) -> String {
    let mut out = format!("bdd {} {} {}\n", b.n(), b.nodes().len(), edge_str(b.root()));
    for (id, node) in b.nodes().iter().enumerate() {
        let _ = writeln!(
            out,
            "{id} {} {} {}",
            node.var,
            edge_str(node.lo),
            edge_str(node.hi)
        );
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = Lines::new(text, false);
    let (hline, h) = header(&mut lines, "graph", &["<vertices>"])?;
    let mut edges = Vec::new();
    let mut last = hline;
    for (line, toks) in lines {
        last = line;
        arity(line, &toks, 2, "<u> <v>")?;
        let u: usize = number(line, toks[0], "a vertex")?;
        let v: usize = number(line, toks[1], "a vertex")?;
        Graph::new(h[0], [(u, v)]).map_err(|e| invariant(line, e.to_string()))?;
        edges.push((u, v));
    }
    Graph::new(h[0], edges).map_err(|e| invariant(last, e.to_string()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.vertices());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_cnf(text: &str) -> Result<Cnf3> {
    let mut lines = Lines::new(text, true);
    let (hline, htoks) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "missing header `p cnf <vars> <clauses>`"))?;
    if htoks.len() != 4 || htoks[0].1 != "p" || htoks[1].1 != "cnf" {
        return Err(syntax(
            hline,
            htoks[0].0,
            "expected header `p cnf <vars> <clauses>`",
        ));
    }
    let vars: usize = number(hline, htoks[2], "<vars>")?;
    let expected: usize = number(hline, htoks[3], "<clauses>")?;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last = hline;
    for (line, toks) in lines {
        last = line;
        for tok in toks {
            let v: i64 = number(line, tok, "a literal")?;
            if v == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if v.unsigned_abs() as usize > vars {
                return Err(syntax(
                    line,
                    tok.0,
                    format!("literal {v} exceeds {vars} variables"),
                ));
            }
            current.push(Literal::from_signed(v)?);
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != expected {
        return Err(invariant(
            last,
            format!(
                "header declares {expected} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    Cnf3::new(vars, clauses).map_err(|e| invariant(hline, e.to_string()))
}

pub fn write_cnf(c: &Cnf3) -> String {
    let mut out = format!("p cnf {} {}\n", c.num_vars(), c.clauses().len());
    for clause in c.clauses() {
        for lit in clause {
            let _ = write!(out, "{} ", lit.to_signed());
        }
        out.push_str("0\n");
    }
    out
}

/// Signed-integer literal list over one or more lines; `0` is ignored.
pub fn parse_literals(text: &str) -> Result<Vec<Literal>> {
    let mut out = Vec::new();
    for (line, toks) in Lines::new(text, false) {
        for tok in toks {
            let v: i64 = number(line, tok, "a signed literal")?;
            if v != 0 {
                out.push(Literal::from_signed(v)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn parse_examples() {
        let rep = parse_bnn("bnn 3\n+ 111\n- 000", &limits()).unwrap();
        assert_eq!(rep, BnnRep::parse_lists(3, &["111"], &["000"]).unwrap());
        assert!(matches!(
            parse_bnn("bnn 2\n+ 11\n- 11", &limits()),
            Err(Error::InvariantViolation { line: 3, .. })
        ));
        let m = parse_mods("mods 2\n11", &limits()).unwrap();
        assert_eq!(
            m.models().map(|x| x.to_string()).collect::<Vec<_>>(),
            ["11"]
        );
    }

    #[test]
    fn serialize_examples() {
        let rep = BnnRep::parse_lists(3, &["000"], &["111"]).unwrap();
        assert_eq!(serialize(&Document::Bnn(rep)), "bnn 3\n+ 000\n- 111\n");
        let b = Bdd::terminal(3, true).unwrap();
        assert_eq!(write_bdd(&b), "bdd 3 0 T1\n");
    }

    #[test]
    fn comments_and_order() {
        let text = "# header next\nbnn 2\n# negatives first\n- 00\n+ 11\n\n+ 10\n";
        let rep = parse_bnn(text, &limits()).unwrap();
        assert_eq!(write_bnn(&rep), "bnn 2\n+ 10\n+ 11\n- 00\n");
    }

    #[test]
    fn diagnostics_carry_positions() {
        assert_eq!(
            parse_bnn("bnn 3\n+ 1x1\n", &limits()),
            Err(Error::Syntax {
                line: 2,
                col: 4,
                message: "expected a bitstring".into()
            })
        );
        assert!(matches!(
            parse_bnn("bnn 3\n+ 11\n", &limits()),
            Err(Error::Syntax {
                line: 2,
                col: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_bnn("bnn 3\n* 111\n", &limits()),
            Err(Error::Syntax {
                line: 2,
                col: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_bnn("mods 3\n", &limits()),
            Err(Error::Syntax {
                line: 1,
                col: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_bnn("bnn 3\n", &limits()),
            Err(Error::InvariantViolation { .. })
        ));
        assert!(matches!(
            parse_bnn("bnn 0\n", &limits()),
            Err(Error::InvariantViolation { line: 1, .. })
        ));
        assert!(matches!(
            parse_mods("mods 25\n", &limits()),
            Err(Error::InvariantViolation { .. })
        ));
    }

    #[test]
    fn bdd_roundtrip_and_errors() {
        let text = "bdd 2 2 0\n0 1 1 T0\n1 2 T0 T1\n";
        let b = parse_bdd(text, &limits()).unwrap();
        assert_eq!(b.node_count(), 2);
        assert_eq!(write_bdd(&b), text);
        assert!(parse_bdd("bdd 2 2 0\n0 1 1 T0\n", &limits()).is_err());
        assert!(parse_bdd("bdd 2 1 0\n0 1 0 T0\n", &limits()).is_err());
        assert!(matches!(
            parse_bdd("bdd 2 1 0\n0 1 T2 T0\n", &limits()),
            Err(Error::Syntax {
                line: 2,
                col: 5,
                ..
            })
        ));
    }

    #[test]
    fn graph_and_cnf() {
        let g = parse_graph("graph 4\n2 1\n3 4\n1 2\n").unwrap();
        assert_eq!(write_graph(&g), "graph 4\n1 2\n3 4\n");
        assert!(parse_graph("graph 3\n1 4\n").is_err());
        assert!(parse_graph("graph 3\n1 1\n").is_err());

        let c = parse_cnf("c demo\np cnf 3 2\n1 -2\n 3 0\n-1 0\n").unwrap();
        assert_eq!(write_cnf(&c), "p cnf 3 2\n1 -2 3 0\n-1 0\n");
        assert!(parse_cnf("p cnf 3 1\n1 2 3 -1 0\n").is_err());
        assert!(parse_cnf("p cnf 3 2\n1 0\n").is_err());
        assert!(parse_cnf("p cnf 2 1\n3 0\n").is_err());
    }

    #[test]
    fn terms_and_clauses() {
        let Document::Term(t) = parse(Kind::Term, "1 -3 5", &limits()).unwrap() else {
            panic!()
        };
        assert_eq!(serialize(&Document::Term(t.clone())), "1 -3 5 0\n");
        assert_eq!(
            parse(Kind::Term, "1 -3 5 0\n", &limits()).unwrap(),
            Document::Term(t)
        );
        assert!(parse(Kind::Clause, "2 -2", &limits()).is_err());
        assert_eq!(
            parse(Kind::Clause, "0", &limits()).unwrap(),
            Document::Clause(Clause::default())
        );
    }

    #[test]
    fn kinds() {
        assert_eq!(detect_kind("# c\nbnn 3\n"), Some(Kind::Bnn));
        assert_eq!(detect_kind("p cnf 1 1\n1 0\n"), Some(Kind::Cnf));
        assert_eq!(detect_kind("1 2 3"), None);
        assert_eq!("graph".parse::<Kind>().unwrap(), Kind::Graph);
    }
}
