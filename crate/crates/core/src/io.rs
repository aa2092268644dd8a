//! Instance file parsing and rendering.
//!
//! Format, one record per line, `#` starts a comment:
//!
//! ```text
//! n m
//! e u v        (m lines)
//! s <id>
//! t <id>
//! ```
//!
//! optionally followed by one representation block:
//!
//! ```text
//! perm s0 s1 ... s(n-1)
//! chords            arcs              hypercube d s_bits t_bits
//! v a b (n lines)   v a b (n lines)
//! ```
//!
//! Path files are whitespace-separated vertex ids on one line.

use crate::classes::{ArcRep, ChordRep, HypercubeRep, PermutationRep, Representation};
use crate::error::{Error, Result};
use crate::graph::{Graph, StInstance};

/// A parsed instance file: the validated instance plus any bundled
/// representation block.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub instance: StInstance,
    pub representation: Option<Representation>,
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
        }
    }

    /// Next significant line with its 1-based number, comments stripped.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.iter.by_ref() {
            let line = raw.split('#').next().unwrap().trim();
            if !line.is_empty() {
                return Some((idx + 1, line));
            }
        }
        None
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("cannot parse {what} from {tok:?}")))
}

fn expect_fields<'a>(line: usize, text: &'a str, n: usize, what: &str) -> Result<Vec<&'a str>> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != n {
        return Err(parse_err(
            line,
            format!("expected {what}, got {:?}", text),
        ));
    }
    Ok(fields)
}

/// Parses an instance file, validating the graph, endpoints, reachability,
/// and any representation block against the graph.
pub fn load_instance(text: &str) -> Result<LoadedInstance> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next().ok_or(parse_err(0, "missing `n m` header"))?;
    let fields = expect_fields(ln, header, 2, "`n m` header")?;
    let n: usize = parse_num(ln, fields[0], "n")?;
    let m: usize = parse_num(ln, fields[1], "m")?;

    let mut graph = Graph::new(n);
    for _ in 0..m {
        let (ln, line) = lines.next().ok_or(parse_err(0, "missing edge line"))?;
        let fields = expect_fields(ln, line, 3, "`e u v`")?;
        if fields[0] != "e" {
            return Err(parse_err(ln, "expected an `e u v` edge line"));
        }
        let u = parse_num(ln, fields[1], "vertex")?;
        let v = parse_num(ln, fields[2], "vertex")?;
        graph.add_edge(u, v).map_err(|e| match e {
            Error::Parse { msg, .. } => parse_err(ln, msg),
            other => other,
        })?;
    }

    let mut read_endpoint = |name: &str| -> Result<usize> {
        let (ln, line) = lines
            .next()
            .ok_or(parse_err(0, format!("missing `{name} <id>` line")))?;
        let fields = expect_fields(ln, line, 2, "`s <id>` / `t <id>`")?;
        if fields[0] != name {
            return Err(parse_err(ln, format!("expected `{name} <id>`")));
        }
        parse_num(ln, fields[1], "vertex")
    };
    let s = read_endpoint("s")?;
    let t = read_endpoint("t")?;
    let instance = StInstance::new(graph, s, t)?;

    let representation = match lines.next() {
        None => None,
        Some((ln, line)) => {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let rep = match fields[0] {
                "perm" => {
                    if fields.len() != n + 1 {
                        return Err(parse_err(ln, format!("`perm` needs {n} integers")));
                    }
                    let sigma = fields[1..]
                        .iter()
                        .map(|f| parse_num(ln, f, "sigma entry"))
                        .collect::<Result<Vec<usize>>>()?;
                    Representation::Permutation(PermutationRep::new(sigma)?)
                }
                "chords" | "arcs" => {
                    let kind = fields[0];
                    let mut ends = vec![None; n];
                    for _ in 0..n {
                        let (ln2, line2) = lines
                            .next()
                            .ok_or(parse_err(ln, format!("`{kind}` needs {n} `v a b` lines")))?;
                        let f = expect_fields(ln2, line2, 3, "`v a b`")?;
                        let v: usize = parse_num(ln2, f[0], "vertex")?;
                        let a: u32 = parse_num(ln2, f[1], "position")?;
                        let b: u32 = parse_num(ln2, f[2], "position")?;
                        if v >= n || ends[v].is_some() {
                            return Err(parse_err(ln2, "bad or repeated vertex id"));
                        }
                        ends[v] = Some((a, b));
                    }
                    let ends: Vec<(u32, u32)> = ends.into_iter().map(Option::unwrap).collect();
                    if kind == "chords" {
                        Representation::Chords(ChordRep::new(ends)?)
                    } else {
                        Representation::Arcs(ArcRep::new(ends, 2 * n as u32)?)
                    }
                }
                "hypercube" => {
                    let f = expect_fields(ln, line, 4, "`hypercube d s_bits t_bits`")?;
                    let d: u32 = parse_num(ln, f[1], "dimension")?;
                    let sb = usize::from_str_radix(f[2], 2)
                        .map_err(|_| parse_err(ln, "bad s bit string"))?;
                    let tb = usize::from_str_radix(f[3], 2)
                        .map_err(|_| parse_err(ln, "bad t bit string"))?;
                    let rep = HypercubeRep::new(d)?;
                    if sb != instance.s() || tb != instance.t() {
                        return Err(parse_err(ln, "hypercube bit strings disagree with s/t"));
                    }
                    Representation::Hypercube(rep)
                }
                other => {
                    return Err(parse_err(ln, format!("unknown representation block {other:?}")))
                }
            };
            if lines.next().is_some() {
                return Err(parse_err(ln, "trailing content after representation block"));
            }
            Some(rep)
        }
    };

    if let Some(rep) = &representation {
        let g = instance.graph();
        match rep {
            Representation::Permutation(r) => r.validate_against(g)?,
            Representation::Chords(r) => r.validate_against(g)?,
            Representation::Arcs(r) => r.validate_against(g)?,
            Representation::Hypercube(r) => r.validate_against(g)?,
        }
    }

    Ok(LoadedInstance {
        instance,
        representation,
    })
}

/// Canonical rendering; `load_instance` of the output reproduces the input.
pub fn format_instance(instance: &StInstance, rep: Option<&Representation>) -> String {
    let g = instance.graph();
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out.push_str(&format!("s {}\n", instance.s()));
    out.push_str(&format!("t {}\n", instance.t()));
    match rep {
        None => {}
        Some(Representation::Permutation(r)) => {
            let sigma: Vec<String> = r.sigma().iter().map(usize::to_string).collect();
            out.push_str(&format!("perm {}\n", sigma.join(" ")));
        }
        Some(Representation::Chords(r)) => {
            out.push_str("chords\n");
            for (v, (a, b)) in r.ends().iter().enumerate() {
                out.push_str(&format!("{v} {a} {b}\n"));
            }
        }
        Some(Representation::Arcs(r)) => {
            out.push_str("arcs\n");
            for (v, (a, b)) in r.arcs().iter().enumerate() {
                out.push_str(&format!("{v} {a} {b}\n"));
            }
        }
        Some(Representation::Hypercube(r)) => {
            let d = r.d as usize;
            out.push_str(&format!(
                "hypercube {} {:0>d$b} {:0>d$b}\n",
                r.d,
                instance.s(),
                instance.t()
            ));
        }
    }
    out
}

/// Parses a path file: whitespace-separated vertex ids on one line.
pub fn parse_path(text: &str) -> Result<Vec<usize>> {
    let mut lines = Lines::new(text);
    let (ln, line) = lines.next().ok_or(parse_err(0, "empty path file"))?;
    if lines.next().is_some() {
        return Err(parse_err(ln + 1, "path files hold a single line"));
    }
    line.split_whitespace()
        .map(|tok| parse_num(ln, tok, "vertex"))
        .collect()
}

pub fn format_path(vertices: &[usize]) -> String {
    let parts: Vec<String> = vertices.iter().map(usize::to_string).collect();
    parts.join(" ")
}
