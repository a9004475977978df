//! Leaderboards of `H[f^2] / I[f]` and `H_inf[f^2] / I[f]` over families of
//! Boolean functions.
//!
//! Results do not depend on the thread count: every function is identified by
//! an index, random tables are drawn from a stream keyed by `(seed, index)`,
//! and leaderboards are ordered by ratio descending, then index ascending.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::{BooleanFunction, Subset};
use crate::entropy::efi_ratios;
use crate::error::{Error, Result};
use crate::report::{Report, Tolerance};
use crate::zoo;

/// Largest arity surveyed exhaustively without an explicit override.
pub const EXHAUSTIVE_DEFAULT_MAX: u32 = 4;
/// Largest arity surveyed exhaustively at all (`2^32` tables).
pub const EXHAUSTIVE_HARD_MAX: u32 = 5;

const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurveyMode {
    /// Every table of arity `n`.
    Exhaustive,
    /// `count` uniformly random tables.
    Random { count: u64, seed: u64 },
    /// Dictators, parities, majority, OR, AND, tribes and their negations.
    Family,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub n: u32,
    pub mode: SurveyMode,
    pub top: usize,
    /// 0 uses the rayon default.
    pub threads: usize,
    pub allow_large: bool,
}

impl SurveyConfig {
    pub fn new(n: u32, mode: SurveyMode) -> SurveyConfig {
        SurveyConfig { n, mode, top: 10, threads: 0, allow_large: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Efi,
    Mefi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub metric: Metric,
    pub rank: usize,
    pub ratio: f64,
    #[serde(rename = "H")]
    pub entropy: f64,
    #[serde(rename = "H_inf")]
    pub min_entropy: f64,
    #[serde(rename = "I")]
    pub total_influence: f64,
    pub index: u64,
    pub table: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Leaderboard {
    pub n: u32,
    pub evaluated: u64,
    pub constant: u64,
    pub efi: Vec<Entry>,
    pub mefi: Vec<Entry>,
}

impl Leaderboard {
    /// One JSON object per line: the efi board, then the mefi board.
    pub fn to_jsonl(&self) -> String {
        self.efi
            .iter()
            .chain(&self.mefi)
            .map(|e| serde_json::to_string(e).expect("entries serialize") + "\n")
            .collect()
    }

    pub fn to_report(&self, tol: Tolerance) -> Report {
        let mut r = Report::new("survey", tol);
        r.input("n", self.n);
        r.quantity("evaluated", self.evaluated as f64).quantity("constant", self.constant as f64);
        if let Some(e) = self.efi.first() {
            r.quantity("max_efi_ratio", e.ratio);
        }
        if let Some(e) = self.mefi.first() {
            r.quantity("max_mefi_ratio", e.ratio);
        }
        r
    }
}

#[derive(Clone, Copy)]
struct Scored {
    ratio: f64,
    index: u64,
}

/// Ratio descending, then index ascending.
fn better(a: &Scored, b: &Scored) -> std::cmp::Ordering {
    b.ratio.total_cmp(&a.ratio).then(a.index.cmp(&b.index))
}

#[derive(Default)]
struct Partial {
    efi: Vec<Scored>,
    mefi: Vec<Scored>,
    evaluated: u64,
    constant: u64,
}

fn keep_top(v: &mut Vec<Scored>, top: usize) {
    v.sort_by(better);
    v.truncate(top);
}

impl Partial {
    fn merge(mut self, other: Partial, top: usize) -> Partial {
        self.efi.extend(other.efi);
        self.mefi.extend(other.mefi);
        keep_top(&mut self.efi, top);
        keep_top(&mut self.mefi, top);
        self.evaluated += other.evaluated;
        self.constant += other.constant;
        self
    }
}

fn random_table(n: u32, seed: u64, index: u64) -> BooleanFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let words = (0..if n <= 6 { 1 } else { 1usize << (n - 6) }).map(|_| rng.next_u64()).collect();
    BooleanFunction::from_words(n, words).expect("arity checked")
}

/// The named functions of arity `n` surveyed in family mode, negations last.
pub fn family(n: u32) -> Result<Vec<(String, BooleanFunction)>> {
    crate::cube::check_arity(n)?;
    let mut out = Vec::new();
    for i in 1..=n as usize {
        out.push((format!("dictator({i})"), zoo::dictator(n, i)?));
    }
    // parities on more than one coordinate; capped so the family stays small
    if n <= 12 {
        for m in 1..1usize << n {
            if m.count_ones() >= 2 {
                out.push((format!("parity{}", Subset(m)), zoo::parity(n, Subset(m))?));
            }
        }
    }
    if n % 2 == 1 {
        out.push((format!("maj({n})"), zoo::majority(n)?));
    }
    if n >= 2 {
        out.push((format!("or({n})"), zoo::or_fn(n)?));
        out.push((format!("and({n})"), zoo::and_fn(n)?));
    }
    for width in 2..n as usize {
        if (n as usize).is_multiple_of(width) {
            let count = n as usize / width;
            out.push((format!("tribes({width},{count})"), zoo::tribes(&zoo::Partition::uniform(width, count)?)?));
        }
    }
    let negated: Vec<_> = out.iter().map(|(l, f)| (format!("-{l}"), f.negate())).collect();
    out.extend(negated);
    Ok(out)
}

pub fn efi_survey(cfg: &SurveyConfig) -> Result<Leaderboard> {
    let n = cfg.n;
    crate::cube::check_arity(n)?;
    if cfg.top == 0 {
        return Err(Error::InvalidArgument("leaderboard size must be positive".into()));
    }
    let fam = match cfg.mode {
        SurveyMode::Family => Some(family(n)?),
        _ => None,
    };
    let total: u64 = match cfg.mode {
        SurveyMode::Exhaustive => {
            let cap = if cfg.allow_large { EXHAUSTIVE_HARD_MAX } else { EXHAUSTIVE_DEFAULT_MAX };
            if n > cap {
                return Err(Error::InvalidArgument(format!(
                    "exhaustive survey limited to n <= {cap}, got {n}"
                )));
            }
            1u64 << (1u32 << n)
        }
        SurveyMode::Random { count, .. } => count,
        SurveyMode::Family => fam.as_ref().map_or(0, |f| f.len() as u64),
    };
    let build = |index: u64| -> BooleanFunction {
        match cfg.mode {
            SurveyMode::Exhaustive => BooleanFunction::from_table_index(n, index).expect("n <= 5"),
            SurveyMode::Random { seed, .. } => random_table(n, seed, index),
            SurveyMode::Family => fam.as_ref().expect("family built")[index as usize].1.clone(),
        }
    };
    let top = cfg.top;
    let score_chunk = |start: u64| -> Partial {
        let mut p = Partial::default();
        for index in start..(start + CHUNK).min(total) {
            let f = build(index);
            p.evaluated += 1;
            if f.is_constant() {
                p.constant += 1;
                continue;
            }
            let e = efi_ratios(&f);
            p.efi.push(Scored { ratio: e.efi_ratio, index });
            p.mefi.push(Scored { ratio: e.mefi_ratio, index });
            if p.efi.len() >= 4 * top {
                keep_top(&mut p.efi, top);
                keep_top(&mut p.mefi, top);
            }
        }
        keep_top(&mut p.efi, top);
        keep_top(&mut p.mefi, top);
        p
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let starts: Vec<u64> = (0..total.div_ceil(CHUNK)).map(|c| c * CHUNK).collect();
    let merged = pool.install(|| {
        starts
            .par_iter()
            .map(|&s| score_chunk(s))
            .reduce(Partial::default, |a, b| a.merge(b, top))
    });
    let entries = |scored: &[Scored], metric: Metric| -> Vec<Entry> {
        scored
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let f = build(s.index);
                let e = efi_ratios(&f);
                Entry {
                    metric,
                    rank: k + 1,
                    ratio: s.ratio,
                    entropy: e.entropy,
                    min_entropy: e.min_entropy,
                    total_influence: e.total_influence,
                    index: s.index,
                    table: f.to_bit_string(),
                    label: fam.as_ref().map(|fm| fm[s.index as usize].0.clone()),
                }
            })
            .collect()
    };
    Ok(Leaderboard {
        n,
        evaluated: merged.evaluated,
        constant: merged.constant,
        efi: entries(&merged.efi, Metric::Efi),
        mefi: entries(&merged.mefi, Metric::Mefi),
    })
}
