use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use catena::constructions::{
    assemble_paving_families, build_lattice_extension, example1_family, example3_pair,
    example3_printed, example4_pair, parallel_extension, realize_extension_pair,
    realize_paving_pair, verify_paving_hypotheses, PavingPairSpec,
};
use catena::ginv::{
    catenary_data, chain_report, g_from_catenary, g_invariant_bruteforce_with_limit,
    inclusion_exclusion_check, verify_chain_partition, Chain, GInvariant, BRUTE_FORCE_LIMIT,
};
use catena::lattice::labeled_isomorphic;
use catena::tutte::tutte_subset_sum;
use catena::{configuration_of, tutte, validate_z_axioms, Matroid, RankedFamily};

use crate::format::{self, Document, MatroidDoc, PairDoc};
use crate::report::Report;
use crate::{Cli, Command, Generate, Mode, Outcome, Route, VerifyKind, What};

/// Largest ground set for which the Tutte polynomial is summed over all
/// subsets; beyond it, subsets are grouped by closure.
const TUTTE_SUBSET_SUM_LIMIT: usize = 20;

/// Brute-force ceiling when the route is forced.
const FORCED_BRUTE_FORCE_LIMIT: usize = 20;

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Compute { path, what, route } => {
            let (report, outcome) = compute(path, *what, *route)?;
            emit(cli, &report)?;
            Ok(outcome)
        }
        Command::Compare { a, b, mode, route } => {
            let (report, outcome) = compare(a, b, *mode, *route)?;
            emit(cli, &report)?;
            Ok(outcome)
        }
        Command::Verify { kind, paths, route } => {
            let (report, outcome) = verify(*kind, paths, *route)?;
            emit(cli, &report)?;
            Ok(outcome)
        }
        Command::Generate { kind } => generate(kind, cli.output.as_deref()),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = report.render();
    match &cli.output {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run leaves no partial file.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Loading

struct Loaded {
    label: String,
    matroid: Matroid,
}

fn read_doc(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn label_of(path: &Path, doc: &Document) -> String {
    match doc.name() {
        Some(name) => name.to_string(),
        None => path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
    }
}

/// Every matroid a document describes: one for matroid and paving files,
/// both realized matroids for pair and lattice-extension files.
fn matroids_of(path: &Path) -> Result<Vec<Loaded>> {
    let doc = read_doc(path)?;
    let label = label_of(path, &doc);
    let ctx = || format!("building the matroid(s) of {}", path.display());
    let pair = |(m1, m2): (Matroid, Matroid)| {
        vec![
            Loaded { label: format!("{label}-1"), matroid: m1 },
            Loaded { label: format!("{label}-2"), matroid: m2 },
        ]
    };
    Ok(match &doc {
        Document::Matroid(d) => vec![Loaded {
            label: label.clone(),
            matroid: Matroid::from_cyclic_flats_general(&d.family).with_context(ctx)?,
        }],
        Document::Paving(d) => vec![Loaded {
            label: label.clone(),
            matroid: Matroid::from_paving(&d.spec).with_context(ctx)?,
        }],
        Document::PavingPair(d) => pair(realize_paving_pair(&d.spec).with_context(ctx)?),
        Document::Extension(d) => {
            pair(realize_extension_pair(&d.spec, &d.sizes, &d.ranks).with_context(ctx)?)
        }
    })
}

fn single(path: &Path) -> Result<Loaded> {
    let mut all = matroids_of(path)?;
    ensure!(
        all.len() == 1,
        "{} describes {} matroids; expected one",
        path.display(),
        all.len()
    );
    Ok(all.remove(0))
}

/// Files named directly, plus the `.txt` files of named directories in
/// name order.
fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("listing {}", p.display()))?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()?;
            files.retain(|f| f.is_file() && f.extension().is_some_and(|x| x == "txt"));
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Invariants

fn g_invariant(m: &Matroid, route: Route) -> Result<(&'static str, GInvariant)> {
    let brute = route.force_bruteforce || (!route.force_catenary && m.n() <= BRUTE_FORCE_LIMIT);
    if brute {
        let limit = if route.force_bruteforce { FORCED_BRUTE_FORCE_LIMIT } else { BRUTE_FORCE_LIMIT };
        Ok(("brute-force", g_invariant_bruteforce_with_limit(m, limit)?))
    } else {
        Ok(("catenary", g_from_catenary(&catenary_data(m))?))
    }
}

fn tutte_of(m: &Matroid) -> Result<(&'static str, catena::Polynomial)> {
    if m.n() <= TUTTE_SUBSET_SUM_LIMIT {
        Ok(("subset-sum", tutte_subset_sum(m)?))
    } else {
        Ok(("closure-grouped", tutte(m)?))
    }
}

fn g_lines(g: &GInvariant) -> Vec<String> {
    g.counts().iter().map(|(s, c)| format!("{c} {s}")).collect()
}

fn describe(report: &mut Report, l: &Loaded) {
    report.field("input", &l.label);
    report.field("n", l.matroid.n());
    report.field("rank", l.matroid.rank());
}

fn compute(path: &Path, what: What, route: Route) -> Result<(Report, Outcome)> {
    let l = single(path)?;
    let m = &l.matroid;
    let name = match what {
        What::Tutte => "tutte",
        What::Ginv => "ginv",
        What::Catenary => "catenary",
        What::Config => "config",
        What::Chains => "chains",
        What::Iota => "iota",
    };
    let mut r = Report::new(&format!("compute {name}"));
    describe(&mut r, &l);
    match what {
        What::Tutte => {
            let (route, p) = tutte_of(m)?;
            r.field("route", route).field("tutte", p);
        }
        What::Ginv => {
            let (route, g) = g_invariant(m, route)?;
            r.field("route", route).field("total", g.total()).section("ginv", g_lines(&g));
        }
        What::Catenary => {
            let cd = catenary_data(m);
            r.field("flags", cd.total())
                .section("catenary", cd.nu().iter().map(|(a, c)| format!("{c} {a}")));
        }
        What::Config => {
            let c = configuration_of(m)?;
            let lines = m.zflats().iter().enumerate().map(|(i, (z, _))| {
                let up: Vec<String> =
                    c.lattice().upper_covers(i).iter().map(|&j| m.zflats()[j].0.to_string()).collect();
                format!(
                    "{z}: size {} rank {} below {}",
                    c.size_label(i),
                    c.rank_label(i),
                    if up.is_empty() { "-".to_string() } else { up.join(" ") }
                )
            });
            r.field("cyclic-flats", c.lattice().size()).section("config", lines);
        }
        What::Chains => {
            let rep = chain_report(m);
            r.field("chains", rep.per_chain().len()).section(
                "chains",
                rep.per_chain().iter().map(|(chain, ms)| {
                    let comps: Vec<String> = ms.iter().map(|(a, c)| format!("{c}{a}")).collect();
                    let chain = if chain.is_empty() { "()".to_string() } else { chain.to_string() };
                    format!("{chain}: {}", comps.join(" "))
                }),
            );
        }
        What::Iota => {
            r.field("iota", m.independent_hyperplane_count());
            match inclusion_exclusion_check(m) {
                Ok(ie) => {
                    r.field("inclusion-exclusion", &ie);
                    r.field("identity", if ie.holds() { "holds" } else { "fails" });
                }
                Err(e) => {
                    r.field("inclusion-exclusion", format!("not applicable: {e}"));
                }
            }
        }
    }
    Ok((r, Outcome::Pass))
}

fn compare(a: &Path, b: &Path, mode: Mode, route: Route) -> Result<(Report, Outcome)> {
    let (la, lb) = (single(a)?, single(b)?);
    let (ma, mb) = (&la.matroid, &lb.matroid);
    let name = match mode {
        Mode::Ginv => "ginv",
        Mode::Catenary => "catenary",
        Mode::Config => "config",
        Mode::Tutte => "tutte",
    };
    let mut r = Report::new(&format!("compare {name}"));
    r.field("left", &la.label).field("right", &lb.label);
    let equal = match mode {
        Mode::Ginv => {
            let ((ra, ga), (rb, gb)) = (g_invariant(ma, route)?, g_invariant(mb, route)?);
            r.field("route", if ra == rb { ra.to_string() } else { format!("{ra} / {rb}") });
            let equal = ga == gb;
            if !equal {
                r.section("left-ginv", g_lines(&ga)).section("right-ginv", g_lines(&gb));
            }
            equal
        }
        Mode::Catenary => {
            let (ca, cb) = (catenary_data(ma), catenary_data(mb));
            let equal = ca == cb;
            if !equal {
                let keys: std::collections::BTreeSet<_> = ca.nu().keys().chain(cb.nu().keys()).collect();
                r.section(
                    "differences",
                    keys.into_iter()
                        .filter(|k| ca.get(k) != cb.get(k))
                        .map(|k| format!("{k}: {} vs {}", ca.get(k), cb.get(k))),
                );
            }
            equal
        }
        Mode::Config => labeled_isomorphic(&configuration_of(ma)?, &configuration_of(mb)?),
        Mode::Tutte => {
            let ((_, ta), (_, tb)) = (tutte_of(ma)?, tutte_of(mb)?);
            let equal = ta == tb;
            if !equal {
                r.field("left-tutte", &ta).field("right-tutte", &tb);
            }
            equal
        }
    };
    r.field("verdict", if equal { "equal" } else { "unequal" });
    Ok((r, if equal { Outcome::Pass } else { Outcome::Fail }))
}

// ---------------------------------------------------------------------------
// Verification

fn verdict(r: &mut Report, lines: Vec<String>, pass: bool) -> Outcome {
    r.field("verdict", if pass { "pass" } else { "fail" });
    r.section("results", lines);
    if pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn verify(kind: VerifyKind, paths: &[PathBuf], route: Route) -> Result<(Report, Outcome)> {
    let files = expand(paths)?;
    ensure!(!files.is_empty(), "no input files");
    match kind {
        VerifyKind::Axioms => verify_axioms(&files),
        VerifyKind::Lemma31 => verify_inclusion_exclusion(&files),
        VerifyKind::Chains => verify_chains(&files),
        VerifyKind::PavingHypotheses => verify_paving(&files),
        VerifyKind::Duality => verify_duality(&files, route),
    }
}

fn family_line(label: &str, family: &RankedFamily) -> (String, bool) {
    match validate_z_axioms(family) {
        Ok(_) => (format!("{label}: pass"), true),
        Err(v) => (format!("{label}: fail {}: {v}", v.axiom()), false),
    }
}

fn verify_axioms(files: &[PathBuf]) -> Result<(Report, Outcome)> {
    let mut r = Report::new("verify axioms");
    let mut lines = Vec::new();
    let mut pass = true;
    let mut push = |(line, ok): (String, bool)| {
        pass &= ok;
        lines.push(line);
    };
    for path in files {
        let doc = read_doc(path)?;
        let label = label_of(path, &doc);
        match &doc {
            Document::Matroid(d) => push(family_line(&label, &d.family)),
            Document::Paving(d) => match d.spec.check() {
                Ok(()) => push(family_line(&label, &d.spec.family()?)),
                Err(e) => push((format!("{label}: fail {e}"), false)),
            },
            Document::PavingPair(d) => {
                let (z1, z2) = assemble_paving_families(&d.spec)?;
                push(family_line(&format!("{label}-1"), &z1));
                push(family_line(&format!("{label}-2"), &z2));
            }
            Document::Extension(d) => match realize_extension_pair(&d.spec, &d.sizes, &d.ranks) {
                Ok((m1, m2)) => {
                    push(family_line(&format!("{label}-1"), &m1.family()));
                    push(family_line(&format!("{label}-2"), &m2.family()));
                }
                Err(catena::Error::InvalidFamily(v)) => {
                    push((format!("{label}: fail {}: {v}", v.axiom()), false))
                }
                Err(e) => return Err(e).with_context(|| format!("realizing {}", path.display())),
            },
        }
    }
    let outcome = verdict(&mut r, lines, pass);
    Ok((r, outcome))
}

fn verify_inclusion_exclusion(files: &[PathBuf]) -> Result<(Report, Outcome)> {
    let mut r = Report::new("verify lemma31");
    let (mut lines, mut pass, mut checked) = (Vec::new(), true, 0);
    for path in files {
        for l in matroids_of(path)? {
            let m = &l.matroid;
            match inclusion_exclusion_check(m) {
                Ok(ie) => {
                    checked += 1;
                    pass &= ie.holds();
                    let word = if ie.holds() { "pass" } else { "fail" };
                    lines.push(format!("{}: {word} {ie}", l.label));
                }
                // g(F) is defined only without loops and coloops.
                Err(e @ (catena::Error::Loops(_) | catena::Error::Coloops(_))) => {
                    lines.push(format!("{}: not applicable, {e}", l.label));
                }
                Err(e) => return Err(e).with_context(|| l.label.clone()),
            }
        }
    }
    r.field("checked", checked);
    let outcome = verdict(&mut r, lines, pass);
    Ok((r, outcome))
}

/// Blocks of chains with the same sequence of (size, rank) labels.
fn chains_by_labels(m: &Matroid) -> BTreeMap<Vec<(usize, usize)>, Vec<Chain>> {
    let mut groups: BTreeMap<_, Vec<Chain>> = BTreeMap::new();
    for chain in chain_report(m).per_chain().keys() {
        let key = chain
            .sets()
            .iter()
            .map(|&z| (z.len(), m.zflat_rank(z).expect("chains consist of cyclic flats")))
            .collect();
        groups.entry(key).or_default().push(chain.clone());
    }
    groups
}

fn verify_chains(files: &[PathBuf]) -> Result<(Report, Outcome)> {
    let all: Vec<Loaded> =
        files.iter().map(|p| matroids_of(p)).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    ensure!(all.len() == 2, "verify chains needs exactly two matroids, got {}", all.len());
    let (m1, m2) = (&all[0].matroid, &all[1].matroid);
    let (g1, g2) = (chains_by_labels(m1), chains_by_labels(m2));
    let keys: std::collections::BTreeSet<_> = g1.keys().chain(g2.keys()).cloned().collect();
    let (mut p, mut q) = (Vec::new(), Vec::new());
    for k in &keys {
        p.push(g1.get(k).cloned().unwrap_or_default());
        q.push(g2.get(k).cloned().unwrap_or_default());
    }
    let report = verify_chain_partition(m1, m2, &p, &q)?;
    let mut r = Report::new("verify chains");
    r.field("left", &all[0].label).field("right", &all[1].label).field("blocks", keys.len());
    let mut lines: Vec<String> = keys
        .iter()
        .zip(p.iter().zip(&q))
        .map(|(k, (pb, qb))| {
            let labels: Vec<String> = k.iter().map(|(s, r)| format!("({s},{r})")).collect();
            let labels = if labels.is_empty() { "()".to_string() } else { labels.join(" ") };
            format!("{labels}: {} / {} chains", pb.len(), qb.len())
        })
        .collect();
    lines.push(report.to_string());
    let outcome = verdict(&mut r, lines, report.holds());
    Ok((r, outcome))
}

fn verify_paving(files: &[PathBuf]) -> Result<(Report, Outcome)> {
    let mut r = Report::new("verify paving-hypotheses");
    let (mut lines, mut pass) = (Vec::new(), true);
    for path in files {
        let doc = read_doc(path)?;
        let label = label_of(path, &doc);
        let Document::PavingPair(d) = &doc else {
            bail!("{} is a {} file, not a paving-pair file", path.display(), doc.kind());
        };
        let report = verify_paving_hypotheses(&d.spec)
            .with_context(|| format!("checking {}", path.display()))?;
        pass &= report.holds();
        match &report.failure {
            None => lines.push(format!("{label}: pass")),
            Some(f) => lines.push(format!("{label}: fail {f}")),
        }
    }
    let outcome = verdict(&mut r, lines, pass);
    Ok((r, outcome))
}

fn verify_duality(files: &[PathBuf], route: Route) -> Result<(Report, Outcome)> {
    let mut r = Report::new("verify duality");
    let (mut lines, mut pass) = (Vec::new(), true);
    for path in files {
        for l in matroids_of(path)? {
            let m = &l.matroid;
            let d = m.dual();
            let ground = m.ground();
            let mut expected: Vec<_> = m
                .zflats()
                .iter()
                .map(|&(z, rz)| {
                    let x = ground.difference(z);
                    (x, x.len() + rz - m.rank())
                })
                .collect();
            expected.sort();
            let mut got = d.zflats().to_vec();
            got.sort();
            let flats_ok = got == expected;
            let (_, g) = g_invariant(m, route)?;
            let (_, gd) = g_invariant(&d, route)?;
            let g_ok = gd == g.dual();
            pass &= flats_ok && g_ok;
            let word = |ok| if ok { "pass" } else { "fail" };
            lines.push(format!(
                "{}: cyclic flats {}, G {}",
                l.label,
                word(flats_ok),
                word(g_ok)
            ));
        }
    }
    let outcome = verdict(&mut r, lines, pass);
    Ok((r, outcome))
}

// ---------------------------------------------------------------------------
// Generation

fn matroid_text(name: String, m: &Matroid) -> String {
    format::to_text(&Document::Matroid(MatroidDoc { name: Some(name), family: m.family() }))
}

fn write_one(output: Option<&Path>, text: &str) -> Result<Outcome> {
    match output {
        Some(path) => write_atomic(path, text)?,
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}

/// Writes `<prefix>-1.txt`, `<prefix>-2.txt` and, for paving pairs,
/// `<prefix>-pair.txt` into `dir`, then prints a report naming them.
fn write_pair(
    dir: Option<&Path>,
    prefix: &str,
    (m1, m2): (Matroid, Matroid),
    spec: Option<&PavingPairSpec>,
) -> Result<Outcome> {
    let dir = dir.context("pair constructions need --output DIR")?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut files = vec![
        (format!("{prefix}-1.txt"), matroid_text(format!("{prefix}-1"), &m1)),
        (format!("{prefix}-2.txt"), matroid_text(format!("{prefix}-2"), &m2)),
    ];
    if let Some(spec) = spec {
        let doc = Document::PavingPair(PairDoc { name: Some(prefix.to_string()), spec: spec.clone() });
        files.push((format!("{prefix}-pair.txt"), format::to_text(&doc)));
    }
    for (file, text) in &files {
        write_atomic(&dir.join(file), text)?;
    }
    let mut r = Report::new(&format!("generate {prefix}"));
    r.field("n", m1.n()).field("rank", m1.rank());
    r.section("files", files.into_iter().map(|(f, _)| f));
    print!("{}", r.render());
    Ok(Outcome::Pass)
}

fn joined(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn generate(kind: &Generate, output: Option<&Path>) -> Result<Outcome> {
    match kind {
        Generate::Parallel { input, t } => {
            let l = single(input)?;
            let m = parallel_extension(&l.matroid, *t)?;
            write_one(output, &matroid_text(format!("{}-parallel-{t}", l.label), &m))
        }
        Generate::Example1 { m, sizes, assign } => {
            let zero_based = assign
                .iter()
                .map(|&a| a.checked_sub(1).context("--assign is 1-based"))
                .collect::<Result<Vec<_>>>()?;
            let matroid = example1_family(*m, &zero_based, sizes)?;
            let name = format!("example1-m{m}-sizes{}-assign{}", joined(sizes), joined(assign));
            write_one(output, &matroid_text(name, &matroid))
        }
        Generate::Example3 { m, n, block, printed } => {
            let spec = if *printed { example3_printed()? } else { example3_pair(*m, *n, *block)? };
            let pair = realize_paving_pair(&spec)?;
            write_pair(output, "example3", pair, Some(&spec))
        }
        Generate::Example4 { block } => {
            let spec = example4_pair(*block)?;
            let pair = realize_paving_pair(&spec)?;
            write_pair(output, "example4", pair, Some(&spec))
        }
        Generate::LatticeExtension { input } => {
            let doc = read_doc(input)?;
            let label = label_of(input, &doc);
            let Document::Extension(d) = &doc else {
                bail!("{} is a {} file, not a lattice-extension file", input.display(), doc.kind());
            };
            build_lattice_extension(&d.spec)?;
            let pair = realize_extension_pair(&d.spec, &d.sizes, &d.ranks)?;
            write_pair(output, &label, pair, None)
        }
        Generate::Dual { input } => {
            let l = single(input)?;
            write_one(output, &matroid_text(format!("{}-dual", l.label), &l.matroid.dual()))
        }
    }
}
