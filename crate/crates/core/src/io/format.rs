//! Line-oriented text formats. Every file starts with a `<tag> v1` header line; blank
//! lines and lines starting with `#` are skipped when reading. Writers emit the
//! canonical form, which reads back to an identical byte string.
//!
//! ```text
//! cayley-table v1
//! kind group
//! order 2
//! names e a
//! table
//! 0 1
//! 1 0
//! ```
//!
//! Semigroups nested inside other formats are written on one line, either as the
//! name of a built-in semigroup (`Z2`, `B2`, `rect2x2`, ...) or as
//! `table:<order>:<row-major entries separated by commas>`.

use crate::congruence::Congruence;
use crate::constructors::{named_small, ReesMatrixSpec, StrongSemilatticeSpec};
use crate::error::{Error, Result};
use crate::lsdp::Action;
use crate::semigroup::FiniteSemigroup;
use std::collections::BTreeMap;
use std::fmt::Write as _;

fn ferr(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, tag: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let mut me = Lines { lines, pos: 0 };
        let header = me.next().ok_or_else(|| ferr("empty file"))?;
        let want = format!("{tag} v1");
        if header.1 != want {
            return Err(ferr(format!("line {}: expected header `{want}`", header.0)));
        }
        Ok(me)
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied();
        self.pos += 1;
        l
    }

    fn peek_key(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|(_, l)| l.split_whitespace().next().unwrap_or(""))
    }

    /// The rest of a line starting with `key`.
    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, l) = self.next().ok_or_else(|| ferr(format!("missing `{key}` line")))?;
        let rest = l
            .strip_prefix(key)
            .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
            .ok_or_else(|| ferr(format!("line {n}: expected `{key}`")))?;
        Ok((n, rest.trim()))
    }

    fn finish(&mut self) -> Result<()> {
        match self.next() {
            None => Ok(()),
            Some((n, _)) => Err(ferr(format!("line {n}: unexpected trailing content"))),
        }
    }
}

fn ints(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| ferr(format!("line {line}: bad integer `{t}`"))))
        .collect()
}

fn int(line: usize, text: &str) -> Result<usize> {
    text.parse::<usize>().map_err(|_| ferr(format!("line {line}: bad integer `{text}`")))
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// A semigroup given by its Cayley table, with a free-form kind tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyFile {
    pub kind: String,
    pub semigroup: FiniteSemigroup,
}

impl CayleyFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut ls = Lines::new(text, "cayley-table")?;
        let (_, kind) = ls.field("kind")?;
        if kind.is_empty() || kind.contains(char::is_whitespace) {
            return Err(ferr("kind must be a single token"));
        }
        let (n_line, n) = ls.field("order")?;
        let n = int(n_line, n)?;
        let names = if ls.peek_key() == Some("names") {
            let (l, rest) = ls.field("names")?;
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.len() != n {
                return Err(ferr(format!("line {l}: expected {n} names")));
            }
            Some(names)
        } else {
            None
        };
        ls.field("table")?;
        let mut table = Vec::with_capacity(n * n);
        for _ in 0..n {
            let (l, row) = ls.next().ok_or_else(|| ferr("table has too few rows"))?;
            let row = ints(l, row)?;
            if row.len() != n {
                return Err(ferr(format!("line {l}: row has {} entries, expected {n}", row.len())));
            }
            table.extend(row);
        }
        ls.finish()?;
        let mut s = FiniteSemigroup::from_table(n, &table)?;
        if let Some(names) = names {
            s = s.with_names(names)?;
        }
        Ok(CayleyFile { kind: kind.to_string(), semigroup: s })
    }

    pub fn write(&self) -> String {
        let s = &self.semigroup;
        let n = s.order();
        let mut out = format!("cayley-table v1\nkind {}\norder {n}\n", self.kind);
        if let Some(names) = s.names() {
            if names.iter().all(|x| !x.is_empty() && !x.contains(char::is_whitespace)) {
                let _ = writeln!(out, "names {}", names.join(" "));
            }
        }
        out.push_str("table\n");
        let t = s.table();
        for row in t.chunks(n) {
            let _ = writeln!(out, "{}", join(row));
        }
        out
    }
}

/// Read a one-line semigroup reference.
pub fn parse_semigroup_ref(text: &str) -> Result<FiniteSemigroup> {
    let text = text.trim();
    let Some(rest) = text.strip_prefix("table:") else {
        return named_small(text);
    };
    let (n, entries) = rest.split_once(':').ok_or_else(|| ferr("expected `table:<n>:<entries>`"))?;
    let n = n.parse::<usize>().map_err(|_| ferr(format!("bad order `{n}`")))?;
    let table = entries
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| ferr(format!("bad entry `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    FiniteSemigroup::from_table(n, &table)
}

pub fn write_semigroup_ref(s: &FiniteSemigroup) -> String {
    let t: Vec<String> = s.table().iter().map(|x| x.to_string()).collect();
    format!("table:{}:{}", s.order(), t.join(","))
}

/// `congruence v1`: the order and a class label per element.
pub fn parse_congruence(text: &str, s: &FiniteSemigroup) -> Result<Congruence> {
    let mut ls = Lines::new(text, "congruence")?;
    let (l, n) = ls.field("order")?;
    let n = int(l, n)?;
    let (l, labels) = ls.field("labels")?;
    let labels = ints(l, labels)?;
    ls.finish()?;
    if n != s.order() || labels.len() != n {
        return Err(ferr(format!("congruence has {} labels, semigroup has order {}", labels.len(), s.order())));
    }
    Congruence::from_labels(s, &labels)
}

pub fn write_congruence(c: &Congruence) -> String {
    format!("congruence v1\norder {}\nlabels {}\n", c.order(), join(c.labels()))
}

/// `rees-matrix v1`: a group, the sizes of `I` and `Λ`, then one row of `P` per `λ`.
pub fn parse_rees(text: &str) -> Result<ReesMatrixSpec> {
    let mut ls = Lines::new(text, "rees-matrix")?;
    let group = parse_semigroup_ref(ls.field("group")?.1)?;
    let (l, i) = ls.field("i")?;
    let i_size = int(l, i)?;
    let (l, lam) = ls.field("lambda")?;
    let lambda_size = int(l, lam)?;
    ls.field("p")?;
    let mut p = Vec::new();
    for _ in 0..lambda_size {
        let (l, row) = ls.next().ok_or_else(|| ferr("sandwich matrix has too few rows"))?;
        p.push(ints(l, row)?);
    }
    ls.finish()?;
    Ok(ReesMatrixSpec { group, i_size, lambda_size, p })
}

pub fn write_rees(spec: &ReesMatrixSpec) -> String {
    let mut out = format!(
        "rees-matrix v1\ngroup {}\ni {}\nlambda {}\np\n",
        write_semigroup_ref(&spec.group),
        spec.i_size,
        spec.lambda_size
    );
    for row in &spec.p {
        let _ = writeln!(out, "{}", join(row));
    }
    out
}

/// `strong-semilattice v1`: the semilattice, one `component <e> <ref>` line per element
/// of it, and `hom <e> <f> : <images>` lines for the structure maps with `e > f`.
pub fn parse_sslat(text: &str) -> Result<StrongSemilatticeSpec> {
    let mut ls = Lines::new(text, "strong-semilattice")?;
    let y = parse_semigroup_ref(ls.field("semilattice")?.1)?;
    let mut components = Vec::new();
    for e in 0..y.order() {
        let (l, rest) = ls.field("component")?;
        let (idx, r) = rest.split_once(char::is_whitespace).ok_or_else(|| ferr(format!("line {l}: bad component")))?;
        if int(l, idx)? != e {
            return Err(ferr(format!("line {l}: components must be listed in order")));
        }
        components.push(parse_semigroup_ref(r)?);
    }
    let mut homs = BTreeMap::new();
    while ls.peek_key() == Some("hom") {
        let (l, rest) = ls.field("hom")?;
        let (head, images) = rest.split_once(':').ok_or_else(|| ferr(format!("line {l}: expected `:`")))?;
        let ef = ints(l, head)?;
        if ef.len() != 2 {
            return Err(ferr(format!("line {l}: expected `hom <e> <f> : ...`")));
        }
        homs.insert((ef[0], ef[1]), ints(l, images)?);
    }
    ls.finish()?;
    Ok(StrongSemilatticeSpec { y, components, homs })
}

pub fn write_sslat(spec: &StrongSemilatticeSpec) -> String {
    let mut out = format!("strong-semilattice v1\nsemilattice {}\n", write_semigroup_ref(&spec.y));
    for (e, c) in spec.components.iter().enumerate() {
        let _ = writeln!(out, "component {e} {}", write_semigroup_ref(c));
    }
    for ((e, f), h) in &spec.homs {
        let _ = writeln!(out, "hom {e} {f} : {}", join(h));
    }
    out
}

/// `action v1`: the acting semigroup `t`, the semigroup `k` acted on, and one
/// `eps <t> : <images>` line per element of `t`.
pub fn parse_action(text: &str) -> Result<Action> {
    let mut ls = Lines::new(text, "action")?;
    let t = parse_semigroup_ref(ls.field("t")?.1)?;
    let k = parse_semigroup_ref(ls.field("k")?.1)?;
    let mut eps = Vec::new();
    for i in 0..t.order() {
        let (l, rest) = ls.field("eps")?;
        let (head, images) = rest.split_once(':').ok_or_else(|| ferr(format!("line {l}: expected `:`")))?;
        if int(l, head.trim())? != i {
            return Err(ferr(format!("line {l}: maps must be listed in order")));
        }
        eps.push(ints(l, images)?);
    }
    ls.finish()?;
    Ok(Action { t, k, eps })
}

pub fn write_action(a: &Action) -> String {
    let mut out = format!("action v1\nt {}\nk {}\n", write_semigroup_ref(&a.t), write_semigroup_ref(&a.k));
    for (i, e) in a.eps.iter().enumerate() {
        let _ = writeln!(out, "eps {i} : {}", join(e));
    }
    out
}
