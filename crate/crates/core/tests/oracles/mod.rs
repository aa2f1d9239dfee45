//! Independent brute-force oracles and the checks built on them. Shared by
//! this crate's integration tests and the CLI acceptance suite, so every
//! check returns a [`Check`] instead of panicking.

#![allow(dead_code)]

use std::path::PathBuf;

use cqmetrics::complexity::{c1_requirement, c3_syntactic};
use cqmetrics::corpus::{
    load_dataset, CQSet, Cardinality, DepScheme, EmbeddingStore, EmbeddingVector, Interrogative, ParseAnnotation,
    RatingEncoding, RequirementPrimitives, Token,
};
use cqmetrics::evaluation::{fleiss_kappa, set_summary};
use cqmetrics::readability::{readability_scores, syllables, text_counts, ReadabilityOptions, WordList};
use cqmetrics::semantics::{entropy_bits, internal_diversity, pairwise_compare, AnalysisConfig};
use cqmetrics::Execution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

#[derive(Debug, Clone)]
pub struct Check {
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn pass(detail: impl Into<String>) -> Self {
        Self {
            ok: true,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Self {
            ok: false,
            detail: detail.into(),
        }
    }

    fn from_failures(failures: Vec<String>, on_pass: String) -> Self {
        if failures.is_empty() {
            Self::pass(on_pass)
        } else {
            Self::fail(format!("{} mismatches; first: {}", failures.len(), failures[0]))
        }
    }
}

pub fn workspace_root() -> PathBuf {
    // both crates live at <root>/crates/<name>
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(name: &str) -> PathBuf {
    workspace_root().join("fixtures").join(name)
}

// ---------------------------------------------------------------- readability

#[derive(Deserialize)]
struct ReadabilityRow {
    text: String,
    words: usize,
    sentences: usize,
    syllables: usize,
    difficult_words: usize,
    fkgl: f64,
    dcr: f64,
}

/// 20 sentences: counts must match the hand-checked table and FKGL/DCR must
/// be bit-identical to the closed forms evaluated from those counts.
pub fn readability_table() -> Check {
    let rows: Vec<ReadabilityRow> =
        serde_json::from_str(include_str!("../data/readability_oracle.json")).expect("oracle table parses");
    let list = WordList::bundled();
    let mut failures = Vec::new();
    for r in &rows {
        let c = match text_counts(&r.text, &list) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("{:?}: {e}", r.text));
                continue;
            }
        };
        let got = (c.words, c.sentences, c.syllables, c.difficult_words);
        let want = (r.words, r.sentences, r.syllables, r.difficult_words);
        if got != want {
            failures.push(format!("{:?}: counts {got:?} != {want:?}", r.text));
            continue;
        }
        let s = readability_scores(&c, ReadabilityOptions::default());
        if s.fkgl != r.fkgl || s.dcr != r.dcr {
            failures.push(format!(
                "{:?}: fkgl {} dcr {} != {} {}",
                r.text, s.fkgl, s.dcr, r.fkgl, r.dcr
            ));
        }
    }
    Check::from_failures(failures, format!("{}/{} sentences exact", rows.len(), rows.len()))
}

#[derive(Deserialize)]
struct SyllableRow {
    word: String,
    syllables: usize,
}

/// Heuristic syllable counts within ±1 of the pronouncing dictionary for at
/// least 90 of 100 words.
pub fn syllable_validation() -> Check {
    let rows: Vec<SyllableRow> =
        serde_json::from_str(include_str!("../data/syllable_oracle.json")).expect("oracle table parses");
    let mut off = Vec::new();
    for r in &rows {
        let got = syllables(&r.word);
        if got.abs_diff(r.syllables) > 1 {
            off.push(format!("{} {} vs {}", r.word, got, r.syllables));
        }
    }
    let within = rows.len() - off.len();
    let detail = format!(
        "{within}/{} within ±1{}",
        rows.len(),
        if off.is_empty() {
            String::new()
        } else {
            format!(" (off: {})", off.join(", "))
        }
    );
    if rows.len() == 100 && within >= 90 {
        Check::pass(detail)
    } else {
        Check::fail(detail)
    }
}

// ---------------------------------------------------------------- agreement

/// Fleiss' kappa by explicit enumeration of ordered rater pairs.
pub fn brute_force_kappa(m: &[Vec<usize>], categories: usize) -> (f64, bool) {
    let n = m[0].len();
    let mut agree = 0.0;
    for row in m {
        let mut pairs = 0usize;
        for i in 0..n {
            for j in 0..n {
                if i != j && row[i] == row[j] {
                    pairs += 1;
                }
            }
        }
        agree += pairs as f64 / (n * (n - 1)) as f64;
    }
    let p_bar = agree / m.len() as f64;
    let cells = (m.len() * n) as f64;
    let mut p_e = 0.0;
    for c in 0..categories {
        let count = m.iter().flatten().filter(|&&l| l == c).count() as f64;
        p_e += (count / cells) * (count / cells);
    }
    if p_e == 1.0 {
        (1.0, true)
    } else {
        ((p_bar - p_e) / (1.0 - p_e), false)
    }
}

pub fn fleiss_random(matrices: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for t in 0..matrices {
        let items = rng.gen_range(2..=40);
        let raters = rng.gen_range(2..=8);
        let cats = rng.gen_range(2..=5);
        // skew the label distribution sometimes so near-degenerate cases occur
        let bias = rng.gen::<f64>();
        let m: Vec<Vec<usize>> = (0..items)
            .map(|_| {
                (0..raters)
                    .map(|_| {
                        if rng.gen::<f64>() < bias {
                            0
                        } else {
                            rng.gen_range(0..cats)
                        }
                    })
                    .collect()
            })
            .collect();
        let categories: Vec<usize> = (0..cats).collect();
        let (want, degenerate) = brute_force_kappa(&m, cats);
        match fleiss_kappa(&m, &categories) {
            Ok(r) => {
                let diff = (r.kappa - want).abs();
                worst = worst.max(diff);
                if diff > 1e-9 || r.degenerate != degenerate {
                    failures.push(format!("matrix {t}: {} vs {want}", r.kappa));
                }
            }
            Err(e) => failures.push(format!("matrix {t}: {e}")),
        }
    }
    Check::from_failures(failures, format!("{matrices} matrices, max |Δκ| = {worst:.1e}"))
}

// ---------------------------------------------------------------- semantics

fn random_store(rng: &mut ChaCha8Rng, prefix: &str, n: usize, dim: usize, store: &mut EmbeddingStore) -> CQSet {
    let mut members = Vec::new();
    // a shared direction makes threshold crossings common
    let base: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for i in 0..n {
        let id = format!("{prefix}{i:03}");
        let spread = rng.gen_range(0.1..1.5);
        loop {
            let v: Vec<f64> = base.iter().map(|b| b + spread * rng.gen_range(-1.0..1.0)).collect();
            if let Ok(e) = EmbeddingVector::new(id.clone(), v) {
                store.insert(e).expect("fresh id");
                break;
            }
        }
        members.push(id);
    }
    CQSet {
        set_id: prefix.to_string(),
        members,
    }
}

/// O(N²) reference: full similarity matrix, then row maxima.
struct BruteDirection {
    maxima: Vec<f64>,
    covered: usize,
    mean: f64,
}

fn brute_direction(from: &[Vec<f64>], against: &[Vec<f64>], tau: f64) -> BruteDirection {
    let mut sims = vec![vec![0.0; against.len()]; from.len()];
    for (i, u) in from.iter().enumerate() {
        for (j, v) in against.iter().enumerate() {
            let mut d = 0.0;
            for k in 0..u.len() {
                d += u[k] * v[k];
            }
            sims[i][j] = d;
        }
    }
    let maxima: Vec<f64> = sims
        .iter()
        .map(|row| {
            let mut m = row[0];
            for &s in &row[1..] {
                if s > m {
                    m = s;
                }
            }
            m
        })
        .collect();
    let covered = maxima.iter().filter(|&&s| s >= tau).count();
    let mean = maxima.iter().sum::<f64>() / maxima.len() as f64;
    BruteDirection { maxima, covered, mean }
}

fn vectors(set: &CQSet, store: &EmbeddingStore) -> Vec<Vec<f64>> {
    let mut ids = set.members.clone();
    ids.sort();
    ids.iter()
        .map(|id| store.get(id).expect("present").values().to_vec())
        .collect()
}

/// Random set pairs (sizes 5-30, dims 4-16). Per-item maxima, covered counts,
/// coverage, novelty and bidirectional coverage must be identical; the MMS
/// mean is a compensated sum in the library and a naive one here, so it is
/// compared to 1e-12.
pub fn semantic_random(pairs: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for t in 0..pairs {
        let dim = rng.gen_range(4..=16);
        let mut store = EmbeddingStore::new(dim);
        let na = rng.gen_range(5..=30);
        let nb = rng.gen_range(5..=30);
        let a = random_store(&mut rng, "a", na, dim, &mut store);
        let b = random_store(&mut rng, "b", nb, dim, &mut store);
        let (va, vb) = (vectors(&a, &store), vectors(&b, &store));
        let tau = match t % 3 {
            // sit exactly on an observed maximum to exercise the inclusive bound
            0 => brute_direction(&va, &vb, 0.0).maxima[rng.gen_range(0..na)].max(1e-6),
            _ => rng.gen_range(0.3..0.95),
        };
        let cfg = AnalysisConfig {
            tau,
            execution: if t % 2 == 0 {
                Execution::Sequential
            } else {
                Execution::default()
            },
            ..AnalysisConfig::default()
        };
        let got = match pairwise_compare(&a, &b, &store, &cfg) {
            Ok(g) => g,
            Err(e) => {
                failures.push(format!("pair {t}: {e}"));
                continue;
            }
        };
        let ab = brute_direction(&va, &vb, tau);
        let ba = brute_direction(&vb, &va, tau);
        let bidir = 100.0 * (ab.covered + ba.covered) as f64 / (na + nb) as f64;
        let checks = [
            (got.a_from_b.max_similarities == ab.maxima, "a maxima"),
            (got.b_from_a.max_similarities == ba.maxima, "b maxima"),
            (
                got.a_from_b.covered == ab.covered && got.b_from_a.covered == ba.covered,
                "covered",
            ),
            (
                got.a_from_b.coverage_pct == 100.0 * ab.covered as f64 / na as f64,
                "coverage a",
            ),
            (
                got.b_from_a.coverage_pct == 100.0 * ba.covered as f64 / nb as f64,
                "coverage b",
            ),
            (
                got.a_from_b.novelty_pct == 100.0 - got.a_from_b.coverage_pct,
                "novelty a",
            ),
            (
                got.b_from_a.novelty_pct == 100.0 - got.b_from_a.coverage_pct,
                "novelty b",
            ),
            (got.bidirectional_pct == bidir, "bidirectional"),
            ((got.a_from_b.mms.mean - ab.mean).abs() < 1e-12, "mms a"),
            ((got.b_from_a.mms.mean - ba.mean).abs() < 1e-12, "mms b"),
        ];
        for (ok, what) in checks {
            if !ok {
                failures.push(format!("pair {t}: {what}"));
            }
        }
    }
    Check::from_failures(failures, format!("{pairs} random pairs identical to brute force"))
}

/// Self-comparison is full coverage with MMS 1; entropy is 0 for identical
/// points and log2 k for k well-separated equal clusters.
pub fn semantic_degenerate() -> Check {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut store = EmbeddingStore::new(8);
    let a = random_store(&mut rng, "s", 12, 8, &mut store);
    let cfg = AnalysisConfig::default();
    match pairwise_compare(&a, &a, &store, &cfg) {
        Ok(p) => {
            if p.a_from_b.coverage_pct != 100.0 || p.bidirectional_pct != 100.0 {
                failures.push(format!("self coverage {}", p.a_from_b.coverage_pct));
            }
            if (p.a_from_b.mms.mean - 1.0).abs() > 1e-12 {
                failures.push(format!("self mms {}", p.a_from_b.mms.mean));
            }
        }
        Err(e) => failures.push(e.to_string()),
    }

    let mut same = EmbeddingStore::new(3);
    let ids: Vec<String> = (0..10).map(|i| format!("q{i}")).collect();
    for id in &ids {
        same.insert(EmbeddingVector::new(id.clone(), vec![0.2, 0.4, 0.9]).unwrap())
            .unwrap();
    }
    let set = CQSet {
        set_id: "same".into(),
        members: ids,
    };
    match internal_diversity(&set, &same, &cfg) {
        Ok(d) if d.entropy_bits == 0.0 => {}
        Ok(d) => failures.push(format!("identical points entropy {}", d.entropy_bits)),
        Err(e) => failures.push(e.to_string()),
    }

    let k = cfg.k;
    let mut axes = EmbeddingStore::new(k);
    let mut members = Vec::new();
    for c in 0..k {
        for j in 0..4 {
            let mut v = vec![0.0; k];
            v[c] = 1.0;
            v[(c + 1) % k] = 0.01 * j as f64;
            let id = format!("c{c}m{j}");
            axes.insert(EmbeddingVector::new(id.clone(), v).unwrap()).unwrap();
            members.push(id);
        }
    }
    let set = CQSet {
        set_id: "axes".into(),
        members,
    };
    match internal_diversity(&set, &axes, &cfg) {
        Ok(d) if (d.entropy_bits - (k as f64).log2()).abs() < 1e-12 => {}
        Ok(d) => failures.push(format!(
            "uniform entropy {} (sizes {:?})",
            d.entropy_bits, d.cluster_sizes
        )),
        Err(e) => failures.push(e.to_string()),
    }
    if entropy_bits(&[3, 3, 3, 3]) != 2.0 {
        failures.push("entropy of uniform counts".into());
    }
    Check::from_failures(failures, "self-coverage 100%, MMS 1, entropy 0 and log2 k".into())
}

// ---------------------------------------------------------------- complexity

const DEP_POOL: [&str; 14] = [
    "nsubj", "dobj", "prep", "acl", "relcl", "conj", "agent", "det", "amod", "pobj", "aux", "NSUBJ", "Prep", "advmod",
];

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> ParseAnnotation {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut heads = vec![0; n];
    heads[order[0]] = order[0];
    for i in 1..n {
        heads[order[i]] = order[rng.gen_range(0..i)];
    }
    let tokens = (0..n)
        .map(|i| Token {
            surface: format!("w{i}"),
            pos: "X".into(),
            dep: if i == order[0] {
                "ROOT".into()
            } else {
                DEP_POOL[rng.gen_range(0..DEP_POOL.len())].into()
            },
            head: heads[i],
        })
        .collect();
    ParseAnnotation {
        cq_id: "t".into(),
        tokens,
        noun_chunks: 0,
        interrogative: Interrogative::Other,
    }
}

/// Depth by explicit descent from the root over child lists.
pub fn brute_force_c3(a: &ParseAnnotation) -> usize {
    let n = a.tokens.len();
    let root = (0..n).find(|&i| a.tokens[i].head == i).expect("rooted");
    let mut depth = 0;
    let mut frontier = vec![root];
    let mut level = 0;
    while !frontier.is_empty() {
        depth = level;
        let mut next = Vec::new();
        for &p in &frontier {
            for c in 0..n {
                if c != p && a.tokens[c].head == p {
                    next.push(c);
                }
            }
        }
        frontier = next;
        level += 1;
    }
    let wanted = ["nsubj", "dobj", "prep", "acl", "relcl", "conj", "agent"];
    let relations = a
        .tokens
        .iter()
        .filter(|t| wanted.iter().any(|w| w.eq_ignore_ascii_case(&t.dep)))
        .count();
    n + depth + relations
}

pub fn c3_random_trees(trees: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for t in 0..trees {
        let a = random_tree(&mut rng, 12);
        let want = brute_force_c3(&a);
        match c3_syntactic(&a, DepScheme::Classic) {
            Ok(got) if got == want => {}
            Ok(got) => failures.push(format!("tree {t}: {got} vs {want}")),
            Err(e) => failures.push(format!("tree {t}: {e}")),
        }
    }
    Check::from_failures(failures, format!("{trees} random 12-node trees"))
}

/// Each insertion of a new primitive raises c1 by exactly one; switching on
/// aggregation or MULTIPLE cardinality never lowers it.
pub fn c1_monotonicity(insertions: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = RequirementPrimitives {
        cq_id: "m".into(),
        concepts: vec![],
        properties: vec![],
        relationships: vec![],
        filters: vec![],
        cardinality: Cardinality::Single,
        aggregation: false,
    };
    let mut failures = Vec::new();
    let mut prev = c1_requirement(&p);
    for i in 0..insertions {
        let kind = rng.gen_range(0..6);
        let expect_step = match kind {
            0..=3 => {
                let name = format!("p{i}");
                match kind {
                    0 => p.concepts.push(name),
                    1 => p.properties.push(name),
                    2 => p.relationships.push(name),
                    _ => p.filters.push(name),
                }
                Some(1)
            }
            4 => {
                p.aggregation = true;
                None
            }
            _ => {
                p.cardinality =
                    [Cardinality::Single, Cardinality::Multiple, Cardinality::Existence][rng.gen_range(0..3)];
                None
            }
        };
        let cur = c1_requirement(&p);
        let ok = match (kind, expect_step) {
            (_, Some(step)) => cur == prev + step,
            (4, None) => cur >= prev,
            // cardinality changes may move c1 by at most one either way
            _ => cur.abs_diff(prev) <= 1,
        };
        if !ok {
            failures.push(format!("insertion {i}: {prev} -> {cur}"));
        }
        prev = cur;
    }
    Check::from_failures(failures, format!("{insertions} insertions"))
}

// ---------------------------------------------------------------- fixture tables

/// Published set-level evaluation values: (set, n, commented, mean, std, accepted).
pub const EVALUATION_ROWS: [(&str, usize, f64, f64, f64, f64); 5] = [
    ("HA-1", 44, 0.27, 2.39, 1.26, 0.91),
    ("HA-2", 54, 0.19, 2.87, 0.62, 0.98),
    ("Pattern", 38, 0.37, 0.11, 2.12, 0.50),
    ("GPT", 26, 0.35, 1.85, 1.52, 0.85),
    ("Gemini", 42, 0.31, 1.52, 1.88, 0.67),
];

/// One check per set against the bundled rating fixture: sizes, commented and
/// accepted shares exact at the reference precision, mean within 0.01.
pub fn evaluation_rows() -> Vec<(String, Check)> {
    let ds = match load_dataset(fixture("askcq_synthetic.csv"), RatingEncoding::PlusMinusOne) {
        Ok(ds) => ds,
        Err(e) => return vec![("fixture".into(), Check::fail(e.to_string()))],
    };
    EVALUATION_ROWS
        .iter()
        .map(|&(set, n, commented, mean, std, accepted)| {
            let check = match ds.set(set).map(|s| set_summary(&ds, s)) {
                Some(Ok(s)) => {
                    // reported as fractions with two decimals
                    let round2 = |pct: f64| pct.round() / 100.0;
                    let mut bad = Vec::new();
                    if s.n != n {
                        bad.push(format!("n {}", s.n));
                    }
                    if round2(s.commented_pct) != commented {
                        bad.push(format!("commented {:.1}%", s.commented_pct));
                    }
                    if round2(s.accepted_pct) != accepted {
                        bad.push(format!("accepted {:.1}%", s.accepted_pct));
                    }
                    if (s.score_mean - mean).abs() > 0.01 + 1e-9 {
                        bad.push(format!("mean {:.4} vs {mean}", s.score_mean));
                    }
                    // std is reported for reference only; it is not part of the criterion
                    let detail = format!(
                        "n={} mean {:.3} ± {:.3} (reference {mean} ± {std}), accepted {:.1}%",
                        s.n, s.score_mean, s.score_std, s.accepted_pct
                    );
                    if bad.is_empty() {
                        Check::pass(detail)
                    } else {
                        Check::fail(format!("{detail}; off: {}", bad.join(", ")))
                    }
                }
                Some(Err(e)) => Check::fail(e.to_string()),
                None => Check::fail("set missing from fixture"),
            };
            (set.to_string(), check)
        })
        .collect()
}

/// Score sums of three ±1 votes are odd, so a set mean is (odd total) / n.
/// Returns the attainable means closest to `target`.
pub fn attainable_means(n: usize, raters: i32, target: f64) -> (f64, f64) {
    let mut below = f64::NEG_INFINITY;
    let mut above = f64::INFINITY;
    for total in -(raters * n as i32)..=(raters * n as i32) {
        // each score has the parity of `raters`, so the total has parity n*raters
        if (total - raters * n as i32) % 2 != 0 {
            continue;
        }
        let m = total as f64 / n as f64;
        if m <= target && m > below {
            below = m;
        }
        if m >= target && m < above {
            above = m;
        }
    }
    (below, above)
}

/// Bidirectional coverage recomputed from the reference directional
/// percentages and set sizes.
pub fn pairwise_bidirectional() -> Check {
    let (n1, n2) = (44.0_f64, 54.0_f64);
    let (cov_1, cov_2) = (20.5, 11.1);
    let covered_1 = (cov_1 / 100.0 * n1).round();
    let covered_2 = (cov_2 / 100.0 * n2).round();
    let bidir = 100.0 * (covered_1 + covered_2) / (n1 + n2);
    let detail = format!("({covered_1} + {covered_2}) / {} = {bidir:.2}% vs 15.3%", n1 + n2);
    if (bidir - 15.3).abs() <= 0.2 {
        Check::pass(detail)
    } else {
        Check::fail(detail)
    }
}
