//! Complete sequences over `[n]`.
//!
//! A word is *complete* when every permutation of `[n]` occurs in it as a
//! (not necessarily contiguous) subsequence. The length of a complete word is
//! the number of oracle calls a routed standard-model circuit needs, so the
//! shortest complete word gives the cheapest circuit of that family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::perm::{format_list, parse_list, Permutation};

/// Largest alphabet for which exhaustive (`n!`) certification is allowed.
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Certified optimal words, one per `n` in `1..=7`.
///
/// `n = 3, 4` are what [`search_shortest`] returns at lengths 7 and 12; the
/// longer ones were found offline. Every entry is re-certified exhaustively
/// whenever [`construct`] hands it out.
const LOOKUP: [&[usize]; 7] = [
    &[1],
    &[1, 2, 1],
    &[1, 2, 1, 3, 1, 2, 1],
    &[1, 2, 3, 4, 1, 2, 3, 1, 4, 2, 1, 3],
    &[1, 2, 3, 5, 4, 1, 2, 3, 5, 1, 4, 2, 3, 1, 5, 4, 3, 2, 1],
    &[
        1, 2, 3, 4, 5, 6, 1, 5, 2, 4, 3, 1, 6, 4, 5, 2, 1, 3, 5, 4, 6, 1, 2, 4, 6, 3, 5, 1,
    ],
    &[
        1, 2, 3, 4, 5, 6, 7, 1, 6, 2, 4, 3, 5, 1, 7, 2, 4, 6, 3, 1, 5, 4, 2, 7, 6, 1, 3, 6, 4, 5,
        2, 1, 7, 4, 5, 6, 3, 2, 1,
    ],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certification {
    Complete,
    Incomplete,
    Unknown,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certification::Complete => "complete",
            Certification::Incomplete => "incomplete",
            Certification::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// All `n!` permutations; conclusive either way.
    Exhaustive,
    /// `trials` seeded random permutations; only a `false` is conclusive.
    Sampled { trials: usize, seed: u64 },
}

/// A word over `1..=n` together with what is known about its completeness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence")]
pub struct CompleteSequence {
    n: usize,
    symbols: Vec<usize>,
    certified: Certification,
}

#[derive(Deserialize)]
struct RawSequence {
    n: usize,
    symbols: Vec<usize>,
    #[serde(default = "unknown")]
    certified: Certification,
}

fn unknown() -> Certification {
    Certification::Unknown
}

impl TryFrom<RawSequence> for CompleteSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        let w = CompleteSequence::new(raw.n, raw.symbols)?;
        // A claimed certificate is only trusted where it can be rechecked.
        match raw.certified {
            Certification::Unknown => Ok(w),
            _ if raw.n <= EXHAUSTIVE_LIMIT => w.certify(CheckMode::Exhaustive),
            c => Ok(CompleteSequence { certified: c, ..w }),
        }
    }
}

impl CompleteSequence {
    /// An uncertified word. Every symbol must lie in `1..=n`.
    pub fn new(n: usize, symbols: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some((position, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s == 0 || s > n)
        {
            return Err(Error::SymbolOutOfRange {
                symbol,
                position: position + 1,
                n,
            });
        }
        Ok(CompleteSequence {
            n,
            symbols,
            certified: Certification::Unknown,
        })
    }

    /// Parses `"1,2,1,3,1,2,1"`.
    pub fn parse(n: usize, list: &str) -> Result<Self> {
        CompleteSequence::new(n, parse_list(list)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn certification(&self) -> Certification {
        self.certified
    }

    /// Runs the check and records its outcome. A passing sampled check leaves
    /// the certificate at [`Certification::Unknown`].
    pub fn certify(self, mode: CheckMode) -> Result<Self> {
        self.certify_with(mode, EXHAUSTIVE_LIMIT, Execution::default())
    }

    pub fn certify_with(mut self, mode: CheckMode, limit: usize, exec: Execution) -> Result<Self> {
        let ok = check_completeness(&self, mode, limit, exec)?;
        self.certified = match (ok, mode) {
            (false, _) => Certification::Incomplete,
            (true, CheckMode::Exhaustive) => Certification::Complete,
            (true, CheckMode::Sampled { .. }) => Certification::Unknown,
        };
        Ok(self)
    }

    /// Appends one symbol. Completeness is preserved, incompleteness is not.
    pub fn push(&mut self, symbol: usize) -> Result<()> {
        if symbol == 0 || symbol > self.n {
            return Err(Error::SymbolOutOfRange {
                symbol,
                position: self.len() + 1,
                n: self.n,
            });
        }
        self.symbols.push(symbol);
        if self.certified == Certification::Incomplete {
            self.certified = Certification::Unknown;
        }
        Ok(())
    }

    /// Drops the certificate, e.g. after a caller-side edit.
    pub fn uncertified(mut self) -> Self {
        self.certified = Certification::Unknown;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence serializes")
    }

    pub(crate) fn with_certification(mut self, c: Certification) -> Self {
        self.certified = c;
        self
    }
}

impl fmt::Display for CompleteSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_list(&self.symbols))
    }
}

/// Strictly increasing 1-based positions `f(1) < … < f(n)` into a word with
/// `word[f(i)] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Embedding {
    indices: Vec<usize>,
}

impl Embedding {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Membership in the image set, for a 1-based word position.
    pub fn contains(&self, position: usize) -> bool {
        self.indices.binary_search(&position).is_ok()
    }

    /// `b[i] = 1` iff position `i` is used, for `i` in `0..=len + 1`, with
    /// both boundary entries set.
    pub fn indicator(&self, len: usize) -> Vec<bool> {
        let mut b = vec![false; len + 2];
        b[0] = true;
        b[len + 1] = true;
        for &i in &self.indices {
            b[i] = true;
        }
        b
    }
}

/// `next[i * n + (s - 1)]` is the first position `>= i` holding `s`, or `len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct NextTable {
    n: usize,
    len: usize,
    next: Vec<u32>,
}

impl NextTable {
    pub(crate) fn new(w: &CompleteSequence) -> Self {
        let (n, len) = (w.n, w.len());
        let mut next = vec![len as u32; (len + 1) * n];
        for i in (0..len).rev() {
            let (head, tail) = next.split_at_mut((i + 1) * n);
            head[i * n..].copy_from_slice(&tail[..n]);
            head[i * n + w.symbols[i] - 1] = i as u32;
        }
        NextTable { n, len, next }
    }

    /// 1-based leftmost embedding of `word`, if any.
    pub(crate) fn embed(&self, word: &[usize]) -> Option<Vec<usize>> {
        let mut pos = 0usize;
        let mut out = Vec::with_capacity(word.len());
        for &s in word {
            if pos >= self.len {
                return None;
            }
            let hit = self.next[pos * self.n + s - 1] as usize;
            if hit == self.len {
                return None;
            }
            out.push(hit + 1);
            pos = hit + 1;
        }
        Some(out)
    }

    pub(crate) fn contains(&self, word: &[usize]) -> bool {
        let mut pos = 0usize;
        for &s in word {
            if pos >= self.len {
                return false;
            }
            let hit = self.next[pos * self.n + s - 1] as usize;
            if hit == self.len {
                return false;
            }
            pos = hit + 1;
        }
        true
    }
}

fn same_alphabet(w: &CompleteSequence, p: &Permutation) -> Result<()> {
    if w.n != p.n() {
        return Err(Error::AlphabetMismatch {
            expected: w.n,
            found: p.n(),
        });
    }
    Ok(())
}

/// Whether `p`'s one-line word is a subsequence of `w`.
pub fn contains_permutation(w: &CompleteSequence, p: &Permutation) -> Result<bool> {
    same_alphabet(w, p)?;
    let mut it = w.symbols.iter();
    Ok(p.images().iter().all(|s| it.any(|x| x == s)))
}

/// Leftmost embedding of `p` into `w` (the canonical `f_σ`).
pub fn greedy_embedding(w: &CompleteSequence, p: &Permutation) -> Result<Option<Embedding>> {
    same_alphabet(w, p)?;
    let mut indices = Vec::with_capacity(p.n());
    let mut pos = 0;
    for &s in p.images() {
        match w.symbols[pos..].iter().position(|&x| x == s) {
            Some(off) => {
                pos += off + 1;
                indices.push(pos);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Embedding { indices }))
}

/// Checks completeness without touching the certificate.
pub fn is_complete(w: &CompleteSequence, mode: CheckMode) -> Result<bool> {
    check_completeness(w, mode, EXHAUSTIVE_LIMIT, Execution::default())
}

pub fn check_completeness(
    w: &CompleteSequence,
    mode: CheckMode,
    limit: usize,
    exec: Execution,
) -> Result<bool> {
    Ok(find_missing(w, mode, limit, exec)?.is_none())
}

/// First permutation (lexicographic for exhaustive mode, draw order for
/// sampled mode) that does not embed.
pub fn find_missing(
    w: &CompleteSequence,
    mode: CheckMode,
    limit: usize,
    exec: Execution,
) -> Result<Option<Permutation>> {
    let perms = match mode {
        CheckMode::Exhaustive => {
            if w.n > limit {
                return Err(Error::TooLargeForExhaustive { n: w.n, limit });
            }
            Permutation::all(w.n)
        }
        CheckMode::Sampled { trials, seed } => {
            if trials == 0 {
                return Err(Error::NoTrials);
            }
            Permutation::sample(w.n, trials, seed)
        }
    };
    let table = NextTable::new(w);
    Ok(exec
        .find_first_failing(&perms, |p| table.contains(p.images()))
        .map(|i| perms[i].clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// `(1, …, n)` repeated `n` times; length `n²`.
    Repeat,
    /// Alternating ascending/descending runs; length `n² − n + 1`.
    Zigzag,
    /// Stored shortest words for `n ≤ 7`.
    Lookup,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Repeat, Strategy::Zigzag, Strategy::Lookup];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Repeat => "repeat",
            Strategy::Zigzag => "zigzag",
            Strategy::Lookup => "lookup",
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "repeat" => Ok(Strategy::Repeat),
            "zigzag" => Ok(Strategy::Zigzag),
            "lookup" => Ok(Strategy::Lookup),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Builds a complete word.
///
/// Up to [`EXHAUSTIVE_LIMIT`] the result is certified by enumeration; above it
/// `repeat` and `zigzag` are marked complete by construction.
pub fn construct(n: usize, strategy: Strategy) -> Result<CompleteSequence> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let symbols = match strategy {
        Strategy::Repeat => (0..n).flat_map(|_| 1..=n).collect(),
        Strategy::Zigzag => zigzag(n),
        Strategy::Lookup => match LOOKUP.get(n - 1) {
            Some(w) => w.to_vec(),
            None => return Err(Error::LookupUnavailable { n }),
        },
    };
    let w = CompleteSequence::new(n, symbols)?;
    if n <= EXHAUSTIVE_LIMIT {
        let w = w.certify(CheckMode::Exhaustive)?;
        if w.certified != Certification::Complete {
            // Only reachable if the stored table is corrupted.
            let missing = find_missing(&w, CheckMode::Exhaustive, n, Execution::Sequential)?
                .map(|p| p.to_string())
                .unwrap_or_default();
            return Err(Error::IncompleteWord { missing });
        }
        Ok(w)
    } else {
        Ok(w.with_certification(Certification::Complete))
    }
}

fn zigzag(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).collect();
    for k in 2..=n {
        if k % 2 == 0 {
            out.extend((1..n).rev());
        } else {
            out.extend(2..=n);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(CompleteSequence),
    /// The space of words of the target length was exhausted.
    NotFound,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub expansions: u64,
}

/// Depth-first branch and bound for a complete word of exactly `target_len`.
///
/// Symmetry is broken by relabeling: the word starts with 1 and symbols first
/// appear in increasing order. Words with two equal adjacent symbols are
/// skipped (for `n ≥ 2`): dropping one copy keeps completeness, so a
/// complete word of length `L` exists iff one without adjacent repeats does.
/// A partial word is cut when some permutation still needs more symbols than
/// remain, or when the permutations that need exactly all remaining symbols
/// disagree on the next one.
///
/// `budget` counts visited nodes; the visit order is fixed, so the result is
/// a function of the arguments alone.
pub fn search_shortest(n: usize, target_len: usize, budget: u64) -> Result<SearchReport> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if target_len == 0 {
        return Err(Error::InvalidParameter("target length must be positive".into()));
    }
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLargeForExhaustive {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut search = Search::new(n, target_len, budget);
    let step = search.visit(0, 0);
    let outcome = match step {
        Step::Found => {
            let w = CompleteSequence::new(n, search.word.iter().map(|&s| s as usize).collect())?
                .certify(CheckMode::Exhaustive)?;
            debug_assert_eq!(w.certification(), Certification::Complete);
            SearchOutcome::Found(w)
        }
        Step::Exhausted => SearchOutcome::NotFound,
        Step::OutOfBudget => SearchOutcome::BudgetExhausted,
    };
    Ok(SearchReport {
        outcome,
        expansions: search.expansions,
    })
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search {
    n: usize,
    len: usize,
    perm_count: usize,
    /// Row-major `perm_count × n` symbols.
    perms: Vec<u8>,
    /// Row `d` holds the matched-prefix length of every permutation after
    /// `d` symbols.
    progress: Vec<u8>,
    word: Vec<u8>,
    expansions: u64,
    budget: u64,
}

impl Search {
    fn new(n: usize, len: usize, budget: u64) -> Self {
        let all = Permutation::all(n);
        let perms: Vec<u8> = all
            .iter()
            .flat_map(|p| p.images().iter().map(|&s| s as u8))
            .collect();
        Search {
            n,
            len,
            perm_count: all.len(),
            perms,
            progress: vec![0; (len + 1) * all.len()],
            word: vec![0; len],
            expansions: 0,
            budget,
        }
    }

    fn visit(&mut self, depth: usize, max_symbol: u8) -> Step {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Step::OutOfBudget;
        }
        let remaining = self.len - depth;
        let n = self.n;
        let row = depth * self.perm_count;
        let mut forced = 0u8;
        for p in 0..self.perm_count {
            let matched = self.progress[row + p] as usize;
            let need = n - matched;
            if need > remaining {
                return Step::Exhausted;
            }
            if need == remaining && need > 0 {
                let s = self.perms[p * n + matched];
                if forced != 0 && forced != s {
                    return Step::Exhausted;
                }
                forced = s;
            }
        }
        if remaining == 0 {
            return Step::Found;
        }
        let last = if depth == 0 { 0 } else { self.word[depth - 1] };
        let top = if depth == 0 {
            1
        } else {
            (max_symbol + 1).min(n as u8)
        };
        for s in 1..=top {
            if n > 1 && s == last {
                continue;
            }
            if forced != 0 && s != forced {
                continue;
            }
            self.word[depth] = s;
            let (cur, next) = self.progress.split_at_mut(row + self.perm_count);
            let cur = &cur[row..];
            for p in 0..self.perm_count {
                let m = cur[p] as usize;
                next[p] = if m < n && self.perms[p * n + m] == s {
                    cur[p] + 1
                } else {
                    cur[p]
                };
            }
            match self.visit(depth + 1, max_symbol.max(s)) {
                Step::Exhausted => {}
                done => return done,
            }
        }
        Step::Exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> CompleteSequence {
        CompleteSequence::parse(n, s).unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn contains_examples() {
        assert!(contains_permutation(&w(3, "1,2,1,3,1,2,1"), &p("1,2,3")).unwrap());
        assert!(!contains_permutation(&w(2, "1,2"), &p("2,1")).unwrap());
        assert!(!contains_permutation(&w(3, "1,2,1,3,1,2"), &p("3,2,1")).unwrap());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let err = contains_permutation(&w(3, "1,2,3"), &p("1,2")).unwrap_err();
        assert_eq!(err, Error::AlphabetMismatch { expected: 3, found: 2 });
        assert!(greedy_embedding(&w(3, "1,2,3"), &p("2,1")).is_err());
    }

    #[test]
    fn greedy_examples() {
        let word = w(3, "1,2,1,3,1,2,1");
        let e = greedy_embedding(&word, &p("1,2,3")).unwrap().unwrap();
        assert_eq!(e.indices(), &[1, 2, 4]);
        let e = greedy_embedding(&word, &p("3,1,2")).unwrap().unwrap();
        assert_eq!(e.indices(), &[4, 5, 6]);
        assert!(greedy_embedding(&w(2, "1,2"), &p("2,1")).unwrap().is_none());
    }

    #[test]
    fn next_table_agrees_with_scan() {
        let word = w(3, "1,2,1,3,1,2,1");
        let table = NextTable::new(&word);
        for perm in Permutation::all(3) {
            let greedy = greedy_embedding(&word, &perm).unwrap();
            assert_eq!(
                table.embed(perm.images()),
                greedy.map(|e| e.indices().to_vec())
            );
        }
    }

    #[test]
    fn completeness_examples() {
        assert!(is_complete(&w(3, "1,2,1,3,1,2,1"), CheckMode::Exhaustive).unwrap());
        assert!(!is_complete(&w(3, "1,2,1,3,1,2"), CheckMode::Exhaustive).unwrap());
        assert!(is_complete(&w(1, "1"), CheckMode::Exhaustive).unwrap());
        let missing = find_missing(
            &w(3, "1,2,1,3,1,2"),
            CheckMode::Exhaustive,
            EXHAUSTIVE_LIMIT,
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(missing, Some(p("3,2,1")));
    }

    #[test]
    fn exhaustive_limit_and_trials_are_enforced() {
        let big = construct(9, Strategy::Zigzag).unwrap();
        assert_eq!(
            is_complete(&big, CheckMode::Exhaustive),
            Err(Error::TooLargeForExhaustive { n: 9, limit: 8 })
        );
        assert_eq!(
            is_complete(&big, CheckMode::Sampled { trials: 0, seed: 0 }),
            Err(Error::NoTrials)
        );
        assert!(is_complete(&big, CheckMode::Sampled { trials: 500, seed: 3 }).unwrap());
    }

    #[test]
    fn certify_updates_state() {
        let good = w(3, "1,2,1,3,1,2,1");
        assert_eq!(good.certification(), Certification::Unknown);
        let c = good.clone().certify(CheckMode::Exhaustive).unwrap();
        assert_eq!(c.certification(), Certification::Complete);
        let s = good
            .certify(CheckMode::Sampled { trials: 10, seed: 1 })
            .unwrap();
        assert_eq!(s.certification(), Certification::Unknown);
        let bad = w(3, "1,2,3").certify(CheckMode::Exhaustive).unwrap();
        assert_eq!(bad.certification(), Certification::Incomplete);
        let bad = w(3, "1,2,3")
            .certify(CheckMode::Sampled { trials: 50, seed: 1 })
            .unwrap();
        assert_eq!(bad.certification(), Certification::Incomplete);
    }

    #[test]
    fn rejects_bad_symbols() {
        assert!(matches!(
            CompleteSequence::parse(3, "1,4"),
            Err(Error::SymbolOutOfRange { symbol: 4, position: 2, n: 3 })
        ));
        assert!(CompleteSequence::parse(3, "0").is_err());
        assert_eq!(CompleteSequence::new(3, vec![]), Err(Error::EmptyWord));
        assert_eq!(CompleteSequence::new(0, vec![1]), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn construct_examples() {
        assert_eq!(construct(2, Strategy::Repeat).unwrap().symbols(), &[1, 2, 1, 2]);
        assert_eq!(
            construct(3, Strategy::Zigzag).unwrap().symbols(),
            &[1, 2, 3, 2, 1, 2, 3]
        );
        assert_eq!(
            construct(3, Strategy::Lookup).unwrap().symbols(),
            &[1, 2, 1, 3, 1, 2, 1]
        );
        assert_eq!(construct(1, Strategy::Lookup).unwrap().symbols(), &[1]);
        assert_eq!(construct(2, Strategy::Lookup).unwrap().symbols(), &[1, 2, 1]);
        assert_eq!(
            construct(8, Strategy::Lookup),
            Err(Error::LookupUnavailable { n: 8 })
        );
    }

    #[test]
    fn constructions_have_formula_lengths_and_are_certified() {
        for n in 1..=7 {
            for s in Strategy::ALL {
                let w = construct(n, s).unwrap();
                assert_eq!(w.certification(), Certification::Complete, "{s} n={n}");
                let expected = match (s, n) {
                    (Strategy::Repeat, _) => n * n,
                    (Strategy::Zigzag, _) => n * n - n + 1,
                    (Strategy::Lookup, 1) => 1,
                    (Strategy::Lookup, 2) => 3,
                    (Strategy::Lookup, _) => n * n - 2 * n + 4,
                };
                assert_eq!(w.len(), expected, "{s} n={n}");
            }
        }
    }

    #[test]
    fn json_round_trip_rechecks_certificates() {
        let w = construct(3, Strategy::Lookup).unwrap();
        let json = w.to_json();
        assert_eq!(
            json,
            r#"{"n":3,"symbols":[1,2,1,3,1,2,1],"certified":"complete"}"#
        );
        let back: CompleteSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        let forged: CompleteSequence =
            serde_json::from_str(r#"{"n":3,"symbols":[1,2,3],"certified":"complete"}"#).unwrap();
        assert_eq!(forged.certification(), Certification::Incomplete);
        assert!(serde_json::from_str::<CompleteSequence>(r#"{"n":2,"symbols":[3]}"#).is_err());
    }

    #[test]
    fn search_small_cases() {
        let r = search_shortest(3, 7, u64::MAX).unwrap();
        match r.outcome {
            SearchOutcome::Found(w) => {
                assert_eq!(w.len(), 7);
                assert_eq!(w.certification(), Certification::Complete);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            search_shortest(3, 6, u64::MAX).unwrap().outcome,
            SearchOutcome::NotFound
        );
        assert_eq!(
            search_shortest(3, 7, 2).unwrap().outcome,
            SearchOutcome::BudgetExhausted
        );
    }

    #[test]
    fn search_handles_degenerate_alphabets() {
        for (n, len, found) in [(1, 1, true), (1, 3, true), (2, 2, false), (2, 3, true), (2, 5, true)] {
            let r = search_shortest(n, len, u64::MAX).unwrap();
            assert_eq!(matches!(r.outcome, SearchOutcome::Found(_)), found, "n={n} L={len}");
        }
        assert!(search_shortest(3, 0, 10).is_err());
    }

    #[test]
    fn lookup_for_small_n_is_what_search_returns() {
        for (n, len) in [(3, 7), (4, 12)] {
            let SearchOutcome::Found(w) = search_shortest(n, len, u64::MAX).unwrap().outcome else {
                panic!("no word for n={n}");
            };
            assert_eq!(w.symbols(), construct(n, Strategy::Lookup).unwrap().symbols());
        }
    }
}
