//! FASTA ingestion, nucleotide encoding, subset partitioning and shuffled
//! background synthesis.
//!
//! Bases are stored as small integer codes (`A=0, C=1, G=2, T=3, N=4`) so the
//! scanner can index log-odds tables directly. Any character outside `ACGT`
//! (after case folding) becomes `N`; windows containing `N` are never scored.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const A: u8 = 0;
pub const C: u8 = 1;
pub const G: u8 = 2;
pub const T: u8 = 3;
pub const N: u8 = 4;

const LETTERS: [u8; 5] = *b"ACGTN";

/// Encode one ASCII character.
#[inline]
pub fn encode_base(c: u8) -> u8 {
    match c.to_ascii_uppercase() {
        b'A' => A,
        b'C' => C,
        b'G' => G,
        b'T' => T,
        _ => N,
    }
}

#[inline]
pub fn decode_base(code: u8) -> char {
    LETTERS[code.min(N) as usize] as char
}

/// Complement of a base code; `N` maps to itself.
#[inline]
pub fn complement(code: u8) -> u8 {
    if code < N {
        3 - code
    } else {
        N
    }
}

pub fn encode(text: &str) -> Vec<u8> {
    text.bytes().map(encode_base).collect()
}

pub fn decode(bases: &[u8]) -> String {
    bases.iter().map(|&b| decode_base(b)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    id: String,
    bases: Vec<u8>,
}

impl Sequence {
    pub fn new(id: impl Into<String>, bases: Vec<u8>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::MalformedRecord(id));
        }
        if bases.is_empty() {
            return Err(Error::MalformedRecord(id));
        }
        if bases.iter().any(|&b| b > N) {
            return Err(Error::invalid("bases", format!("invalid base code in `{id}`")));
        }
        Ok(Sequence { id, bases })
    }

    /// Build from a letter string, e.g. `Sequence::from_letters("s1", "ACGT")`.
    pub fn from_letters(id: impl Into<String>, letters: &str) -> Result<Self> {
        Sequence::new(id, encode(letters))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn bases(&self) -> &[u8] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn letters(&self) -> String {
        decode(&self.bases)
    }

    pub fn reverse_complement(&self) -> Sequence {
        Sequence {
            id: self.id.clone(),
            bases: self.bases.iter().rev().map(|&b| complement(b)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Foreground,
    Background,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSet {
    role: Role,
    sequences: Vec<Sequence>,
    subset_label: Option<String>,
}

impl SequenceSet {
    pub fn new(role: Role, sequences: Vec<Sequence>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(sequences.len());
        for s in &sequences {
            if !seen.insert(s.id()) {
                return Err(Error::DuplicateId(s.id().to_string()));
            }
        }
        Ok(SequenceSet {
            role,
            sequences,
            subset_label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.subset_label = Some(label.into());
        self
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn subset_label(&self) -> Option<&str> {
        self.subset_label.as_deref()
    }

    pub fn sequences(&self) -> &[Sequence] {
        &self.sequences
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sequence> {
        self.sequences.iter()
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn ids(&self) -> Vec<String> {
        self.sequences.iter().map(|s| s.id.clone()).collect()
    }

    pub fn manifest(&self) -> SubsetManifest {
        SubsetManifest {
            subset_label: self.subset_label.clone().unwrap_or_default(),
            sequence_ids: self.ids(),
        }
    }
}

impl<'a> IntoIterator for &'a SequenceSet {
    type Item = &'a Sequence;
    type IntoIter = std::slice::Iter<'a, Sequence>;

    fn into_iter(self) -> Self::IntoIter {
        self.sequences.iter()
    }
}

/// JSON record listing which sequences went into a subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetManifest {
    pub subset_label: String,
    pub sequence_ids: Vec<String>,
}

/// Nucleotide background distribution over `A, C, G, T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackgroundDistribution {
    probs: [f64; 4],
}

impl BackgroundDistribution {
    pub const PSEUDOCOUNT: f64 = 1.0;

    pub fn new(probs: [f64; 4]) -> Result<Self> {
        if probs.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            return Err(Error::invalid("background", "probabilities must be positive"));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::invalid("background", format!("sums to {sum}")));
        }
        Ok(BackgroundDistribution { probs })
    }

    pub fn uniform() -> Self {
        BackgroundDistribution { probs: [0.25; 4] }
    }

    pub fn probs(&self) -> &[f64; 4] {
        &self.probs
    }
}

impl Default for BackgroundDistribution {
    fn default() -> Self {
        Self::uniform()
    }
}

/// Parse FASTA text. Headers start with `>`; the id is the first
/// whitespace-delimited token of the header.
pub fn parse_fasta(text: &[u8], role: Role) -> Result<SequenceSet> {
    let text = String::from_utf8_lossy(text);
    let mut records: Vec<(String, Vec<u8>)> = Vec::new();
    for line in text.lines() {
        let line = line.trim_end_matches('\r');
        if let Some(header) = line.strip_prefix('>') {
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            if id.is_empty() {
                return Err(Error::MalformedRecord(header.to_string()));
            }
            records.push((id, Vec::new()));
        } else if !line.trim().is_empty() {
            match records.last_mut() {
                Some((_, bases)) => bases.extend(line.trim().bytes().map(encode_base)),
                None => return Err(Error::MalformedRecord("(sequence before first header)".into())),
            }
        }
    }
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sequences = records
        .into_iter()
        .map(|(id, bases)| Sequence::new(id, bases))
        .collect::<Result<Vec<_>>>()?;
    SequenceSet::new(role, sequences)
}

pub fn read_fasta(path: &Path, role: Role) -> Result<SequenceSet> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_fasta(&bytes, role)
}

/// Render a set as FASTA with 60-column sequence lines.
pub fn write_fasta(set: &SequenceSet) -> String {
    let mut out = String::new();
    for s in set {
        let _ = writeln!(out, ">{}", s.id());
        for chunk in s.bases().chunks(60) {
            out.push_str(&decode(chunk));
            out.push('\n');
        }
    }
    out
}

/// Laplace-smoothed nucleotide frequencies; `N` is excluded from the counts.
pub fn empirical_background(set: &SequenceSet) -> Result<BackgroundDistribution> {
    let mut counts = [0u64; 4];
    for s in set {
        for &b in s.bases() {
            if b < N {
                counts[b as usize] += 1;
            }
        }
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::NoInformativeBases);
    }
    let pc = BackgroundDistribution::PSEUDOCOUNT;
    let denom = total as f64 + 4.0 * pc;
    let probs = counts.map(|c| (c as f64 + pc) / denom);
    Ok(BackgroundDistribution { probs })
}

/// Shuffle (seeded) and split into `n` disjoint subsets. The first
/// `len % n` subsets get one extra sequence.
pub fn partition_subsets(set: &SequenceSet, n: usize, seed: u64) -> Result<Vec<SequenceSet>> {
    if n == 0 {
        return Err(Error::invalid("n_subsets", "must be at least 1"));
    }
    if set.len() < n {
        return Err(Error::TooFewSequences {
            needed: n,
            have: set.len(),
        });
    }
    let mut order: Vec<usize> = (0..set.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let base = set.len() / n;
    let extra = set.len() % n;
    let mut subsets = Vec::with_capacity(n);
    let mut cursor = 0;
    for i in 0..n {
        let size = base + usize::from(i < extra);
        let sequences = order[cursor..cursor + size]
            .iter()
            .map(|&k| set.sequences[k].clone())
            .collect();
        cursor += size;
        subsets.push(SequenceSet {
            role: set.role,
            sequences,
            subset_label: Some(format!("subset-{i}")),
        });
    }
    Ok(subsets)
}

/// Dinucleotide-preserving shuffle of every sequence in `fg`
/// (Altschul–Erickson Eulerian walk). The result is a background set with
/// ids suffixed `_shuf`.
pub fn shuffle_background(fg: &SequenceSet, seed: u64) -> Result<SequenceSet> {
    if fg.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sequences = fg
        .iter()
        .map(|s| Sequence {
            id: format!("{}_shuf", s.id()),
            bases: dinucleotide_shuffle(s.bases(), &mut rng),
        })
        .collect();
    let mut out = SequenceSet::new(Role::Background, sequences)?;
    out.subset_label = fg.subset_label.clone();
    Ok(out)
}

/// Random permutation of `bases` with the same multiset of adjacent pairs,
/// the same first base and the same last base. `N` is treated as a fifth
/// symbol.
pub fn dinucleotide_shuffle<R: Rng + ?Sized>(bases: &[u8], rng: &mut R) -> Vec<u8> {
    let n = bases.len();
    if n <= 2 {
        return bases.to_vec();
    }
    let mut edges: [Vec<u8>; 5] = Default::default();
    for w in bases.windows(2) {
        edges[w[0] as usize].push(w[1]);
    }
    let last = bases[n - 1] as usize;

    // Pick one "last exit" edge per vertex so those edges form a tree
    // rooted at the final base; this guarantees the walk uses every edge.
    let mut last_exit = [0usize; 5];
    loop {
        for v in 0..5 {
            if v != last && !edges[v].is_empty() {
                last_exit[v] = rng.random_range(0..edges[v].len());
            }
        }
        let rooted = (0..5).filter(|&v| v != last && !edges[v].is_empty()).all(|v| {
            let mut u = v;
            for _ in 0..5 {
                u = edges[u][last_exit[u]] as usize;
                if u == last {
                    return true;
                }
            }
            false
        });
        if rooted {
            break;
        }
    }

    for v in 0..5 {
        if edges[v].is_empty() {
            continue;
        }
        if v == last {
            edges[v].shuffle(rng);
        } else {
            let exit = edges[v].swap_remove(last_exit[v]);
            edges[v].shuffle(rng);
            edges[v].push(exit);
        }
    }

    let mut cursor = [0usize; 5];
    let mut out = Vec::with_capacity(n);
    let mut u = bases[0] as usize;
    out.push(bases[0]);
    for _ in 1..n {
        let next = edges[u][cursor[u]];
        cursor[u] += 1;
        out.push(next);
        u = next as usize;
    }
    out
}
