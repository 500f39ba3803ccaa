//! MEME minimal motif format: reading baseline motifs and writing ours.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::motif::Pwm;
use crate::seq::BackgroundDistribution;

/// Allowed deviation of a parsed row sum from one.
pub const ROW_SUM_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct MemeMotifRecord {
    pub name: String,
    pub width: usize,
    pub nsites: Option<usize>,
    /// `width` rows over `A, C, G, T`.
    pub probs: Vec<[f64; 4]>,
}

impl MemeMotifRecord {
    /// Floor and renormalize into a [`Pwm`].
    pub fn to_pwm(&self) -> Result<Pwm> {
        Pwm::from_rows(self.probs.clone())
    }
}

fn matrix_err(motif: &str, row: usize, reason: impl Into<String>) -> Error {
    Error::MalformedMatrix {
        motif: motif.to_string(),
        row,
        reason: reason.into(),
    }
}

/// Values of `key= value` (or `key=value`) pairs on a matrix header line.
fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let mut tokens = line.split_whitespace();
    while let Some(tok) = tokens.next() {
        if let Some((k, v)) = tok.split_once('=') {
            if k == key {
                return if v.is_empty() { tokens.next() } else { Some(v) };
            }
        }
    }
    None
}

fn parse_row(line: &str) -> Option<Vec<f64>> {
    line.split_whitespace().map(|t| t.parse::<f64>().ok()).collect()
}

pub fn parse_meme(text: &str) -> Result<Vec<MemeMotifRecord>> {
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    if !lines.iter().any(|l| l.starts_with("MEME version")) {
        return Err(Error::NotMemeFormat("missing `MEME version` header".into()));
    }
    if let Some(alpha) = lines.iter().find_map(|l| l.strip_prefix("ALPHABET=")) {
        if alpha.trim() != "ACGT" {
            return Err(Error::NotMemeFormat(format!("unsupported alphabet `{}`", alpha.trim())));
        }
    }

    let mut records = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let Some(rest) = lines[i].strip_prefix("MOTIF") else {
            i += 1;
            continue;
        };
        let name = rest
            .split_whitespace()
            .next()
            .ok_or_else(|| Error::NotMemeFormat(format!("MOTIF without a name at line {}", i + 1)))?
            .to_string();
        i += 1;
        while i < lines.len() && !lines[i].starts_with("letter-probability matrix") {
            if lines[i].starts_with("MOTIF") {
                return Err(matrix_err(&name, 0, "no letter-probability matrix"));
            }
            i += 1;
        }
        if i == lines.len() {
            return Err(matrix_err(&name, 0, "no letter-probability matrix"));
        }
        let header = lines[i];
        if let Some(a) = header_value(header, "alength") {
            if a != "4" {
                return Err(matrix_err(&name, 0, format!("alength {a} is not 4")));
            }
        }
        let declared_width = match header_value(header, "w") {
            Some(w) => Some(w.parse::<usize>().map_err(|_| matrix_err(&name, 0, format!("bad width `{w}`")))?),
            None => None,
        };
        let nsites = header_value(header, "nsites").and_then(|v| v.parse::<f64>().ok()).map(|v| v as usize);
        i += 1;

        let mut probs = Vec::new();
        while i < lines.len() {
            let line = lines[i];
            if declared_width.is_some_and(|w| probs.len() == w) {
                break;
            }
            if line.is_empty() {
                if declared_width.is_none() && !probs.is_empty() {
                    break;
                }
                i += 1;
                continue;
            }
            let Some(values) = parse_row(line) else {
                if declared_width.is_none() {
                    break;
                }
                return Err(matrix_err(&name, probs.len(), format!("expected 4 numbers, got `{line}`")));
            };
            let row = probs.len();
            if values.len() != 4 {
                return Err(matrix_err(&name, row, format!("expected 4 numbers, got {}", values.len())));
            }
            if values.iter().any(|v| *v < 0.0 || !v.is_finite()) {
                return Err(matrix_err(&name, row, "negative or non-finite probability"));
            }
            let sum: f64 = values.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(matrix_err(&name, row, format!("row sums to {sum}")));
            }
            probs.push([values[0], values[1], values[2], values[3]]);
            i += 1;
        }
        if let Some(w) = declared_width {
            if probs.len() != w {
                return Err(matrix_err(&name, probs.len(), format!("expected {w} rows, found {}", probs.len())));
            }
        }
        if probs.is_empty() {
            return Err(matrix_err(&name, 0, "empty matrix"));
        }
        records.push(MemeMotifRecord {
            name,
            width: probs.len(),
            nsites,
            probs,
        });
    }
    Ok(records)
}

pub fn write_meme(pwms: &[Pwm], names: &[String]) -> Result<String> {
    write_meme_with_background(pwms, names, &BackgroundDistribution::uniform())
}

/// Minimal-format text. Probabilities are written at full precision so a
/// parse reproduces them exactly.
pub fn write_meme_with_background(pwms: &[Pwm], names: &[String], bg: &BackgroundDistribution) -> Result<String> {
    if pwms.len() != names.len() {
        return Err(Error::invalid("names", format!("{} motifs but {} names", pwms.len(), names.len())));
    }
    let mut seen = HashSet::new();
    for n in names {
        if n.is_empty() || n.chars().any(char::is_whitespace) {
            return Err(Error::InvalidName(n.clone()));
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateId(n.clone()));
        }
    }
    let p = bg.probs();
    let mut out = String::new();
    out.push_str("MEME version 4\n\nALPHABET= ACGT\n\nstrands: + -\n\n");
    let _ = writeln!(out, "Background letter frequencies\nA {} C {} G {} T {}", p[0], p[1], p[2], p[3]);
    for (pwm, name) in pwms.iter().zip(names) {
        let _ = writeln!(out, "\nMOTIF {name}\nletter-probability matrix: alength= 4 w= {}", pwm.len());
        for r in pwm.rows() {
            let _ = writeln!(out, " {} {} {} {}", r[0], r[1], r[2], r[3]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::{random_pwm, EPSILON};

    const ONE: &str = "MEME version 5

ALPHABET= ACGT

strands: + -

Background letter frequencies
A 0.3 C 0.2 G 0.2 T 0.3

MOTIF m1 ALT1
letter-probability matrix: alength= 4 w= 3 nsites= 18 E= 1.2e-4
 1.000000 0.000000 0.000000 0.000000
 0.25 0.25 0.25 0.25
  0.100 0.200 0.300 0.401

URL http://example.org
";

    #[test]
    fn single_motif() {
        let recs = parse_meme(ONE).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].name, "m1");
        assert_eq!(recs[0].width, 3);
        assert_eq!(recs[0].nsites, Some(18));
        let pwm = recs[0].to_pwm().unwrap();
        assert_eq!(pwm.rows()[0], [1.0 - 3.0 * EPSILON, EPSILON, EPSILON, EPSILON]);
        assert_eq!(pwm.rows()[1], [0.25; 4]);
        assert!((pwm.rows()[2].iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_motifs_in_order() {
        let text = format!("{ONE}\nMOTIF m2\nletter-probability matrix: alength= 4 w= 1\n0.1 0.2 0.3 0.4\n");
        let recs = parse_meme(&text).unwrap();
        assert_eq!(recs.iter().map(|r| r.name.as_str()).collect::<Vec<_>>(), vec!["m1", "m2"]);
    }

    #[test]
    fn width_may_be_omitted() {
        let text = "MEME version 4\nMOTIF x\nletter-probability matrix:\n0.1 0.2 0.3 0.4\n0.4 0.3 0.2 0.1\n\nMOTIF y\nletter-probability matrix: w=1\n0.25 0.25 0.25 0.25\n";
        let recs = parse_meme(text).unwrap();
        assert_eq!(recs[0].width, 2);
        assert_eq!(recs[1].width, 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_meme("MOTIF a\n"), Err(Error::NotMemeFormat(_))));
        let bad_arity = "MEME version 4\nMOTIF a\nletter-probability matrix: alength= 4 w= 1\n0.5 0.5\n";
        assert!(matches!(parse_meme(bad_arity), Err(Error::MalformedMatrix { row: 0, .. })));
        let bad_sum = "MEME version 4\nMOTIF a\nletter-probability matrix: alength= 4 w= 2\n0.25 0.25 0.25 0.25\n0.5 0.5 0.5 0.5\n";
        assert!(matches!(parse_meme(bad_sum), Err(Error::MalformedMatrix { row: 1, .. })));
        let short = "MEME version 4\nMOTIF a\nletter-probability matrix: alength= 4 w= 3\n0.25 0.25 0.25 0.25\n";
        assert!(matches!(parse_meme(short), Err(Error::MalformedMatrix { .. })));
        let rna = "MEME version 4\nALPHABET= ACGU\n";
        assert!(matches!(parse_meme(rna), Err(Error::NotMemeFormat(_))));
    }

    #[test]
    fn write_rules() {
        let empty = write_meme(&[], &[]).unwrap();
        assert!(parse_meme(&empty).unwrap().is_empty());
        let p = random_pwm(4, 1.0, 0).unwrap();
        assert!(matches!(
            write_meme(std::slice::from_ref(&p), &["has space".into()]),
            Err(Error::InvalidName(_))
        ));
        assert!(matches!(
            write_meme(&[p.clone(), p.clone()], &["a".into(), "a".into()]),
            Err(Error::DuplicateId(_))
        ));
        assert!(write_meme(&[p], &[]).is_err());
    }

    #[test]
    fn round_trip_exact() {
        let pwms: Vec<Pwm> = (0..5).map(|s| random_pwm(19, 1.0, s).unwrap()).collect();
        let names: Vec<String> = (0..5).map(|i| format!("motif_{i}")).collect();
        let back = parse_meme(&write_meme(&pwms, &names).unwrap()).unwrap();
        for (p, r) in pwms.iter().zip(&back) {
            assert_eq!(&r.to_pwm().unwrap(), p);
        }
    }
}
