//! The text formats read and written by the command line.
//!
//! Every document starts with `format: 1` and a `kind:` line. Top-level
//! lines are `key: value`; a key with an empty value may be followed by
//! indented item lines. `#` starts a comment. Element ids are integers
//! from 0.
//!
//! ```text
//! format: 1
//! kind: matroid
//! name: fig1-M
//! n: 8
//! cyclic-flats:
//!   0:
//!   1: 0 1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use catena::constructions::{LatticeExtensionSpec, PavingPairSpec, RankLabels};
use catena::{ElementSet, FiniteLattice, PavingSpec, RankedFamily};
use thiserror::Error;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] catena::Error),
}

type Result<T, E = FormatError> = std::result::Result<T, E>;

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

#[derive(Clone, Debug)]
pub struct MatroidDoc {
    pub name: Option<String>,
    pub family: RankedFamily,
}

#[derive(Clone, Debug)]
pub struct PavingDoc {
    pub name: Option<String>,
    pub spec: PavingSpec,
}

#[derive(Clone, Debug)]
pub struct PairDoc {
    pub name: Option<String>,
    pub spec: PavingPairSpec,
}

/// A lattice-extension spec with the labels used to realize it. Atom
/// indices in `s` and `t` are 1-based in the file, 0-based here.
#[derive(Clone, Debug)]
pub struct ExtensionDoc {
    pub name: Option<String>,
    pub spec: LatticeExtensionSpec,
    pub sizes: Vec<usize>,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Document {
    Matroid(MatroidDoc),
    Paving(PavingDoc),
    PavingPair(PairDoc),
    Extension(ExtensionDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Matroid(_) => "matroid",
            Document::Paving(_) => "paving",
            Document::PavingPair(_) => "paving-pair",
            Document::Extension(_) => "lattice-extension",
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Document::Matroid(d) => d.name.as_deref(),
            Document::Paving(d) => d.name.as_deref(),
            Document::PavingPair(d) => d.name.as_deref(),
            Document::Extension(d) => d.name.as_deref(),
        }
    }
}

// ---------------------------------------------------------------------------
// Generic layer

#[derive(Debug)]
struct Entry {
    line: usize,
    key: String,
    value: String,
    items: Vec<(usize, String)>,
}

struct Raw {
    entries: Vec<Entry>,
}

impl Raw {
    fn parse(text: &str) -> Result<Raw> {
        let mut entries: Vec<Entry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim_end();
            if content.trim().is_empty() {
                continue;
            }
            if content.starts_with(char::is_whitespace) {
                let last = entries
                    .last_mut()
                    .ok_or_else(|| syntax(line, "indented line before any key"))?;
                if !last.value.is_empty() {
                    return Err(syntax(line, format!("key {:?} has a value and no items", last.key)));
                }
                last.items.push((line, content.trim().to_string()));
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| syntax(line, format!("expected `key: value`, got {content:?}")))?;
            let key = key.trim().to_string();
            if entries.iter().any(|e| e.key == key) {
                return Err(syntax(line, format!("duplicate key {key:?}")));
            }
            entries.push(Entry { line, key, value: value.trim().to_string(), items: Vec::new() });
        }
        let first = entries.first().ok_or_else(|| FormatError::Invalid("empty document".into()))?;
        if first.key != "format" {
            return Err(syntax(first.line, "the document must start with `format: 1`"));
        }
        if first.value != FORMAT_VERSION {
            return Err(syntax(first.line, format!("unsupported format version {:?}", first.value)));
        }
        Ok(Raw { entries })
    }

    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn need(&self, key: &str) -> Result<&Entry> {
        self.get(key).ok_or_else(|| FormatError::Invalid(format!("missing key {key:?}")))
    }

    fn value(&self, key: &str) -> Result<(usize, &str)> {
        let e = self.need(key)?;
        Ok((e.line, e.value.as_str()))
    }

    fn number(&self, key: &str) -> Result<usize> {
        let (line, v) = self.value(key)?;
        number(line, v)
    }

    fn name(&self) -> Option<String> {
        self.get("name").map(|e| e.value.clone()).filter(|v| !v.is_empty())
    }

    /// Rejects keys the kind does not use, so typos do not pass silently.
    fn only(&self, allowed: impl Fn(&str) -> bool) -> Result<()> {
        for e in &self.entries {
            if !matches!(e.key.as_str(), "format" | "kind" | "name") && !allowed(&e.key) {
                return Err(syntax(e.line, format!("unexpected key {:?}", e.key)));
            }
        }
        Ok(())
    }
}

fn number(line: usize, s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| syntax(line, format!("expected a number, got {s:?}")))
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| number(line, t))
        .collect()
}

fn set_of(line: usize, s: &str, n: usize) -> Result<ElementSet> {
    let ids = numbers(line, s)?;
    let mut set = ElementSet::EMPTY;
    for e in ids {
        if e >= n {
            return Err(syntax(line, format!("element {e} is outside 0..{n}")));
        }
        if set.contains(e) {
            return Err(syntax(line, format!("element {e} is repeated")));
        }
        set.insert(e);
    }
    Ok(set)
}

/// `rank: ids` items.
fn ranked_items(entry: &Entry, n: usize) -> Result<Vec<(ElementSet, usize)>> {
    entry
        .items
        .iter()
        .map(|(line, item)| {
            let (r, ids) = item
                .split_once(':')
                .ok_or_else(|| syntax(*line, format!("expected `rank: ids`, got {item:?}")))?;
            Ok((set_of(*line, ids, n)?, number(*line, r)?))
        })
        .collect()
}

fn set_items(entry: &Entry, n: usize) -> Result<Vec<ElementSet>> {
    entry.items.iter().map(|(line, item)| set_of(*line, item, n)).collect()
}

fn ids(set: ElementSet) -> String {
    set.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn joined(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn header(out: &mut String, kind: &str, name: &Option<String>) {
    out.push_str("format: 1\n");
    let _ = writeln!(out, "kind: {kind}");
    if let Some(name) = name {
        let _ = writeln!(out, "name: {name}");
    }
}

fn ranked_section(out: &mut String, key: &str, entries: &[(ElementSet, usize)]) {
    let _ = writeln!(out, "{key}:");
    for &(set, r) in entries {
        let list = ids(set);
        if list.is_empty() {
            let _ = writeln!(out, "  {r}:");
        } else {
            let _ = writeln!(out, "  {r}: {list}");
        }
    }
}

fn set_section(out: &mut String, key: &str, sets: &[ElementSet]) {
    let _ = writeln!(out, "{key}:");
    for &set in sets {
        let _ = writeln!(out, "  {}", ids(set));
    }
}

fn sorted(sets: &[ElementSet]) -> Vec<ElementSet> {
    let mut v = sets.to_vec();
    v.sort();
    v
}

// ---------------------------------------------------------------------------
// Permutations

/// Parses `(4 6)(5 7)` cycle notation, `()` for the identity, or an
/// explicit list of the `n` images.
pub fn parse_permutation(line: usize, s: &str, n: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    let perm = if s.starts_with('(') {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = s;
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| syntax(line, format!("bad cycle notation {s:?}")))?;
            let cycle = numbers(line, inner.0)?;
            for (i, &e) in cycle.iter().enumerate() {
                if e >= n || seen[e] {
                    return Err(syntax(line, format!("element {e} is out of range or repeated")));
                }
                seen[e] = true;
                perm[e] = cycle[(i + 1) % cycle.len()];
            }
            rest = inner.1.trim_start();
        }
        perm
    } else {
        let perm = numbers(line, s)?;
        if perm.len() != n {
            return Err(syntax(line, format!("a map needs {n} images, got {}", perm.len())));
        }
        perm
    };
    let mut hit = vec![false; n];
    for &x in &perm {
        if x >= n || std::mem::replace(&mut hit[x], true) {
            return Err(syntax(line, format!("{s:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(perm)
}

/// Cycle notation with fixed points omitted; `()` for the identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        let _ = write!(out, "({})", joined(&cycle));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

// ---------------------------------------------------------------------------
// Parsing

pub fn parse(text: &str) -> Result<Document> {
    let raw = Raw::parse(text)?;
    let (line, kind) = raw.value("kind")?;
    match kind {
        "matroid" => parse_matroid(&raw).map(Document::Matroid),
        "paving" => parse_paving(&raw).map(Document::Paving),
        "paving-pair" => parse_pair(&raw).map(Document::PavingPair),
        "lattice-extension" => parse_extension(&raw).map(Document::Extension),
        other => Err(syntax(line, format!("unknown kind {other:?}"))),
    }
}

fn parse_matroid(raw: &Raw) -> Result<MatroidDoc> {
    raw.only(|k| matches!(k, "n" | "cyclic-flats"))?;
    let n = raw.number("n")?;
    let entries = ranked_items(raw.need("cyclic-flats")?, n)?;
    Ok(MatroidDoc { name: raw.name(), family: RankedFamily::new(n, entries)? })
}

fn parse_paving(raw: &Raw) -> Result<PavingDoc> {
    raw.only(|k| matches!(k, "n" | "r" | "dependent-hyperplanes"))?;
    let n = raw.number("n")?;
    let r = raw.number("r")?;
    let hyperplanes = match raw.get("dependent-hyperplanes") {
        Some(e) => set_items(e, n)?,
        None => Vec::new(),
    };
    Ok(PavingDoc { name: raw.name(), spec: PavingSpec::new(n, r, hyperplanes) })
}

fn is_indexed(key: &str, prefix: &str) -> bool {
    key.strip_prefix(prefix)
        .is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
}

fn parse_pair(raw: &Raw) -> Result<PairDoc> {
    raw.only(|k| {
        matches!(
            k,
            "n" | "r"
                | "dependent-hyperplanes-1"
                | "dependent-hyperplanes-2"
                | "block-sizes"
                | "ranks"
                | "rank-labels-1"
                | "rank-labels-2"
        ) || is_indexed(k, "A")
            || is_indexed(k, "B")
            || is_indexed(k, "alpha")
    })?;
    let n = raw.number("n")?;
    let r = raw.number("r")?;
    let hyper = |key: &str| -> Result<Vec<ElementSet>> {
        match raw.get(key) {
            Some(e) => set_items(e, n),
            None => Ok(Vec::new()),
        }
    };
    let n1 = PavingSpec::new(n, r, hyper("dependent-hyperplanes-1")?);
    let n2 = PavingSpec::new(n, r, hyper("dependent-hyperplanes-2")?);
    let p = raw.entries.iter().filter(|e| is_indexed(&e.key, "A")).count();
    if p == 0 {
        return Err(FormatError::Invalid("no partition blocks A1, B1, alpha1".into()));
    }
    let (mut a_blocks, mut b_blocks, mut alphas) = (Vec::new(), Vec::new(), Vec::new());
    for j in 1..=p {
        a_blocks.push(set_items(raw.need(&format!("A{j}"))?, n)?);
        b_blocks.push(set_items(raw.need(&format!("B{j}"))?, n)?);
        let (line, v) = raw.value(&format!("alpha{j}"))?;
        alphas.push(parse_permutation(line, v, n)?);
    }
    for e in &raw.entries {
        for prefix in ["A", "B", "alpha"] {
            if is_indexed(&e.key, prefix) {
                let j = number(e.line, &e.key[prefix.len()..])?;
                if j == 0 || j > p {
                    return Err(syntax(e.line, format!("block index {j} is outside 1..={p}")));
                }
            }
        }
    }
    let block_sizes = match raw.get("block-sizes") {
        Some(e) => numbers(e.line, &e.value)?,
        None => vec![1; n],
    };
    let rank_labels = match raw.get("ranks") {
        None => RankLabels::NRank,
        Some(e) => {
            let mut words = e.value.split_whitespace();
            match words.next() {
                Some("n-rank") => RankLabels::NRank,
                Some("by-level") => {
                    RankLabels::ByLevel(numbers(e.line, &words.collect::<Vec<_>>().join(" "))?)
                }
                Some("explicit") => {
                    let side = |key: &str| -> Result<BTreeMap<ElementSet, usize>> {
                        let entry = raw.need(key)?;
                        let mut map = BTreeMap::new();
                        for (set, rank) in ranked_items(entry, n)? {
                            if map.insert(set, rank).is_some() {
                                return Err(syntax(entry.line, format!("{set} labeled twice")));
                            }
                        }
                        Ok(map)
                    };
                    RankLabels::Explicit([side("rank-labels-1")?, side("rank-labels-2")?])
                }
                _ => {
                    return Err(syntax(
                        e.line,
                        "ranks must be `n-rank`, `by-level <ranks>` or `explicit`",
                    ))
                }
            }
        }
    };
    Ok(PairDoc {
        name: raw.name(),
        spec: PavingPairSpec { n1, n2, a_blocks, b_blocks, alphas, block_sizes, rank_labels },
    })
}

/// `x<y` pairs.
fn relation(line: usize, s: &str) -> Result<Vec<(usize, usize)>> {
    s.split_whitespace()
        .map(|t| {
            let (x, y) = t
                .split_once('<')
                .ok_or_else(|| syntax(line, format!("expected `x<y`, got {t:?}")))?;
            Ok((number(line, x)?, number(line, y)?))
        })
        .collect()
}

fn lattice(line: usize, size: usize, covers: &str) -> Result<FiniteLattice> {
    FiniteLattice::from_relation(size, relation(line, covers)?)
        .map_err(|e| syntax(line, e.to_string()))
}

fn parse_extension(raw: &Raw) -> Result<ExtensionDoc> {
    raw.only(|k| {
        matches!(k, "base-size" | "base-order" | "atoms" | "b" | "inserts" | "s" | "t" | "sizes" | "ranks")
            || is_indexed(k, "tau")
    })?;
    let size = raw.number("base-size")?;
    let (line, order) = raw.value("base-order")?;
    let base = lattice(line, size, order)?;
    let (line, atoms) = raw.value("atoms")?;
    let atoms = numbers(line, atoms)?;
    let b = raw.number("b")?;
    let mut taus = Vec::new();
    for i in 1..atoms.len() {
        let (line, v) = raw.value(&format!("tau{i}"))?;
        let pairs = v
            .split_whitespace()
            .map(|t| {
                let (x, y) = t
                    .split_once('>')
                    .ok_or_else(|| syntax(line, format!("expected `y>image`, got {t:?}")))?;
                Ok((number(line, x)?, number(line, y)?))
            })
            .collect::<Result<Vec<_>>>()?;
        taus.push(pairs);
    }
    let inserts = raw
        .need("inserts")?
        .items
        .iter()
        .map(|(line, item)| {
            let (size, order) = item
                .split_once(':')
                .ok_or_else(|| syntax(*line, format!("expected `size: x<y ...`, got {item:?}")))?;
            lattice(*line, number(*line, size)?, order)
        })
        .collect::<Result<Vec<_>>>()?;
    let one_based = |key: &str| -> Result<Vec<usize>> {
        let (line, v) = raw.value(key)?;
        numbers(line, v)?
            .into_iter()
            .map(|x| x.checked_sub(1).ok_or_else(|| syntax(line, "atom indices start at 1")))
            .collect()
    };
    let (s, t) = (one_based("s")?, one_based("t")?);
    let (line, sizes) = raw.value("sizes")?;
    let sizes = numbers(line, sizes)?;
    let (line, ranks) = raw.value("ranks")?;
    let ranks = numbers(line, ranks)?;
    Ok(ExtensionDoc {
        name: raw.name(),
        spec: LatticeExtensionSpec { base, atoms, b, taus, inserts, s, t },
        sizes,
        ranks,
    })
}

// ---------------------------------------------------------------------------
// Serialization

pub fn to_text(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Matroid(d) => {
            header(&mut out, doc.kind(), &d.name);
            let family = d.family.canonical();
            let _ = writeln!(out, "n: {}", family.n());
            ranked_section(&mut out, "cyclic-flats", family.entries());
        }
        Document::Paving(d) => {
            header(&mut out, doc.kind(), &d.name);
            let _ = writeln!(out, "n: {}\nr: {}", d.spec.n, d.spec.r);
            set_section(&mut out, "dependent-hyperplanes", &sorted(&d.spec.dependent_hyperplanes));
        }
        Document::PavingPair(d) => {
            header(&mut out, doc.kind(), &d.name);
            let s = &d.spec;
            let _ = writeln!(out, "n: {}\nr: {}", s.n1.n, s.n1.r);
            set_section(&mut out, "dependent-hyperplanes-1", &sorted(&s.n1.dependent_hyperplanes));
            set_section(&mut out, "dependent-hyperplanes-2", &sorted(&s.n2.dependent_hyperplanes));
            for (j, ((a, b), alpha)) in s.a_blocks.iter().zip(&s.b_blocks).zip(&s.alphas).enumerate() {
                set_section(&mut out, &format!("A{}", j + 1), a);
                set_section(&mut out, &format!("B{}", j + 1), b);
                let _ = writeln!(out, "alpha{}: {}", j + 1, cycle_notation(alpha));
            }
            let _ = writeln!(out, "block-sizes: {}", joined(&s.block_sizes));
            match &s.rank_labels {
                RankLabels::NRank => out.push_str("ranks: n-rank\n"),
                RankLabels::ByLevel(levels) => {
                    let _ = writeln!(out, "ranks: by-level {}", joined(levels));
                }
                RankLabels::Explicit(maps) => {
                    out.push_str("ranks: explicit\n");
                    for (i, map) in maps.iter().enumerate() {
                        let entries: Vec<_> = map.iter().map(|(&k, &v)| (k, v)).collect();
                        ranked_section(&mut out, &format!("rank-labels-{}", i + 1), &entries);
                    }
                }
            }
        }
        Document::Extension(d) => {
            header(&mut out, doc.kind(), &d.name);
            let s = &d.spec;
            let order = |l: &FiniteLattice| {
                l.covers().iter().map(|(x, y)| format!("{x}<{y}")).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(out, "base-size: {}", s.base.size());
            let _ = writeln!(out, "base-order: {}", order(&s.base));
            let _ = writeln!(out, "atoms: {}", joined(&s.atoms));
            let _ = writeln!(out, "b: {}", s.b);
            for (i, tau) in s.taus.iter().enumerate() {
                let mut pairs = tau.clone();
                pairs.sort();
                let list: Vec<String> = pairs.iter().map(|(x, y)| format!("{x}>{y}")).collect();
                let _ = writeln!(out, "tau{}: {}", i + 1, list.join(" "));
            }
            out.push_str("inserts:\n");
            for l in &s.inserts {
                let _ = writeln!(out, "  {}: {}", l.size(), order(l));
            }
            let plus_one = |v: &[usize]| joined(&v.iter().map(|x| x + 1).collect::<Vec<_>>());
            let _ = writeln!(out, "s: {}", plus_one(&s.s));
            let _ = writeln!(out, "t: {}", plus_one(&s.t));
            let _ = writeln!(out, "sizes: {}", joined(&d.sizes));
            let _ = writeln!(out, "ranks: {}", joined(&d.ranks));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use catena::constructions::{example4_pair, fig3_labels, fig3_spec};
    use catena::fixtures::fig1_m_family;

    #[test]
    fn matroid_round_trip() {
        let doc = Document::Matroid(MatroidDoc { name: Some("fig1-M".into()), family: fig1_m_family() });
        let text = to_text(&doc);
        assert!(text.starts_with("format: 1\nkind: matroid\nname: fig1-M\nn: 8\ncyclic-flats:\n  0:\n  1: 0 1\n"));
        assert_eq!(to_text(&parse(&text).unwrap()), text);
    }

    #[test]
    fn comments_and_reordering_canonicalize() {
        let text = "# M\nformat: 1\nkind: matroid\nn: 3\ncyclic-flats:\n  2: 0 1 2  # top\n  0:\n";
        let doc = parse(text).unwrap();
        assert_eq!(to_text(&doc), "format: 1\nkind: matroid\nn: 3\ncyclic-flats:\n  0:\n  2: 0 1 2\n");
    }

    #[test]
    fn pair_round_trip() {
        let doc = Document::PavingPair(PairDoc { name: None, spec: example4_pair(2).unwrap() });
        let text = to_text(&doc);
        assert!(text.contains("alpha1: (4 6)(5 7)\n"));
        let back = parse(&text).unwrap();
        match &back {
            Document::PavingPair(d) => {
                let mut expected = example4_pair(2).unwrap();
                for n in [&mut expected.n1, &mut expected.n2] {
                    n.dependent_hyperplanes.sort();
                }
                assert_eq!(d.spec, expected);
            }
            _ => panic!("wrong kind"),
        }
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn extension_round_trip() {
        let (sizes, ranks) = fig3_labels();
        let doc = Document::Extension(ExtensionDoc { name: None, spec: fig3_spec(), sizes, ranks });
        let text = to_text(&doc);
        assert!(text.contains("s: 1 2\nt: 2 2\n"), "{text}");
        assert_eq!(to_text(&parse(&text).unwrap()), text);
    }

    #[test]
    fn permutations() {
        assert_eq!(parse_permutation(1, "(0 2 1)", 4).unwrap(), vec![2, 0, 1, 3]);
        assert_eq!(parse_permutation(1, "()", 2).unwrap(), vec![0, 1]);
        assert_eq!(parse_permutation(1, "1 0 2", 3).unwrap(), vec![1, 0, 2]);
        assert!(parse_permutation(1, "(0 1)(1 2)", 3).is_err());
        assert!(parse_permutation(1, "0 0 2", 3).is_err());
        assert_eq!(cycle_notation(&[2, 0, 1, 3]), "(0 2 1)");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse("format: 1\nkind: matroid\nn: 2\ncyclic-flats:\n  0:\n  1: 0 5\n").unwrap_err();
        assert_eq!(err.to_string(), "line 6: element 5 is outside 0..2");
        assert!(parse("kind: matroid\n").is_err());
        assert!(parse("format: 2\nkind: matroid\n").is_err());
        assert!(parse("format: 1\nkind: matroid\nn: 2\nbogus: 1\ncyclic-flats:\n  0:\n").is_err());
    }
}
