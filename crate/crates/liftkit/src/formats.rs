//! Text formats for automorphisms, cover specs and derivations.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use liftkit_core::autos::FreeEndo;
use liftkit_core::cover::{CoverSpec, DeckGroup};
use liftkit_core::twists::{CommuteShape, Derivation, Step, TwistLetter, TwistWord};
use liftkit_core::words::Word;

/// A parse failure at a 1-based line.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num(line: usize, s: &str, what: &str) -> Result<usize, FormatError> {
    s.parse().map_err(|_| FormatError { line, msg: format!("expected {what}, found `{s}`") })
}

/// Generator token `g<i>`, 1-based.
fn parse_generator(line: usize, s: &str) -> Result<usize, FormatError> {
    match s.strip_prefix('g').map(str::parse::<usize>) {
        Some(Ok(i)) if i >= 1 => Ok(i),
        _ => err(line, format!("expected a generator `g<i>`, found `{s}`")),
    }
}

fn parse_word(line: usize, s: &str, rank: usize) -> Result<Word, FormatError> {
    Word::parse(s, rank).map_err(|e| FormatError { line, msg: e.to_string() })
}

fn parse_rank(line: usize, l: &str) -> Result<usize, FormatError> {
    match l.split_whitespace().collect::<Vec<_>>()[..] {
        ["rank", n] => parse_num(line, n, "a rank"),
        _ => err(line, format!("expected `rank <n>`, found `{l}`")),
    }
}

/// Contents of an automorphism file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoFile {
    pub endo: FreeEndo,
    /// Star images `a_1, a_2, ...`; empty for a plain automorphism.
    pub stars: Vec<Word>,
}

/// `rank <n>`, then `g<i> -> <word>` for every generator, then optional
/// `star <j> -> <word>` for `j = 1, 2, ...`.
pub fn parse_auto(text: &str) -> Result<AutoFile, FormatError> {
    let mut lines = content_lines(text);
    let Some((l0, first)) = lines.next() else { return err(1, "empty automorphism file") };
    let rank = parse_rank(l0, first)?;
    let mut images: Vec<Option<Word>> = vec![None; rank];
    let mut stars: Vec<(usize, Word)> = Vec::new();
    let mut last = l0;
    for (line, l) in lines {
        last = line;
        let Some((lhs, rhs)) = l.split_once("->") else {
            return err(line, format!("unknown directive `{l}`"));
        };
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        let word = parse_word(line, rhs, rank)?;
        if let Some(j) = lhs.strip_prefix("star") {
            let j = parse_num(line, j.trim(), "a star index")?;
            if j == 0 || stars.iter().any(|&(s, _)| s == j) {
                return err(line, format!("bad or repeated star index {j}"));
            }
            stars.push((j, word));
        } else {
            let i = parse_generator(line, lhs)?;
            match images.get_mut(i - 1) {
                Some(slot @ None) => *slot = Some(word),
                Some(Some(_)) => return err(line, format!("g{i} given twice")),
                None => return err(line, format!("g{i} exceeds rank {rank}")),
            }
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| FormatError { line: last, msg: format!("no image given for g{}", i + 1) }))
        .collect::<Result<Vec<_>, _>>()?;
    stars.sort_by_key(|&(j, _)| j);
    if let Some((pos, _)) = stars.iter().enumerate().find(|(pos, (j, _))| *j != pos + 1) {
        return err(last, format!("star images must be numbered 1..{}, missing {}", stars.len(), pos + 1));
    }
    let endo = FreeEndo::new(rank, images).map_err(|e| FormatError { line: l0, msg: e.to_string() })?;
    Ok(AutoFile { endo, stars: stars.into_iter().map(|(_, w)| w).collect() })
}

/// `rank <n>`, `deck cyclic <k>` or `deck table <order>` followed by the
/// Cayley table rows, `label g<i> = <element>` per generator, and optional
/// `base-boundaries <m>`.
pub fn parse_cover(text: &str) -> Result<CoverSpec, FormatError> {
    let mut lines = content_lines(text);
    let Some((l0, first)) = lines.next() else { return err(1, "empty cover file") };
    let rank = parse_rank(l0, first)?;
    let mut deck: Option<(usize, DeckGroup)> = None;
    let mut labels: Vec<Option<usize>> = vec![None; rank];
    let mut boundaries = 1;
    let mut last = l0;
    while let Some((line, l)) = lines.next() {
        last = line;
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[..] {
            ["deck", "cyclic", k] => {
                let k = parse_num(line, k, "a cyclic order")?;
                let g = DeckGroup::cyclic(k).map_err(|e| FormatError { line, msg: e.to_string() })?;
                deck = Some((line, g));
            }
            ["deck", "table", order] => {
                let order = parse_num(line, order, "a group order")?;
                let mut rows = Vec::with_capacity(order);
                for _ in 0..order {
                    let Some((rl, row)) = lines.next() else {
                        return err(line, format!("deck table needs {order} rows"));
                    };
                    last = rl;
                    let row = row
                        .split_whitespace()
                        .map(|t| parse_num(rl, t, "a table entry"))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(row);
                }
                let g = DeckGroup::from_table(&rows).map_err(|e| FormatError { line, msg: e.to_string() })?;
                deck = Some((line, g));
            }
            ["label", g, "=", e] => {
                let i = parse_generator(line, g)?;
                let e = parse_num(line, e, "a deck element")?;
                match labels.get_mut(i - 1) {
                    Some(slot @ None) => *slot = Some(e),
                    Some(Some(_)) => return err(line, format!("label for g{i} given twice")),
                    None => return err(line, format!("g{i} exceeds rank {rank}")),
                }
            }
            ["base-boundaries", m] => boundaries = parse_num(line, m, "a boundary count")?,
            _ => return err(line, format!("unknown directive `{l}`")),
        }
    }
    let Some((deck_line, deck)) = deck else { return err(last, "missing `deck` directive") };
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(i, q)| q.ok_or_else(|| FormatError { line: last, msg: format!("no label given for g{}", i + 1) }))
        .collect::<Result<Vec<_>, _>>()?;
    CoverSpec::new(rank, deck, labels, boundaries).map_err(|e| FormatError { line: deck_line, msg: e.to_string() })
}

pub fn format_cover(spec: &CoverSpec) -> String {
    let mut out = format!("rank {}\n", spec.base_rank());
    let deck = spec.deck();
    match deck.cyclic_order() {
        Some(k) => out.push_str(&format!("deck cyclic {k}\n")),
        None => {
            out.push_str(&format!("deck table {}\n", deck.order()));
            for a in 0..deck.order() {
                let row: Vec<String> = (0..deck.order()).map(|b| deck.mul(a, b).to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    for (i, q) in spec.labels().iter().enumerate() {
        out.push_str(&format!("label g{} = {q}\n", i + 1));
    }
    if spec.base_boundaries() != 1 {
        out.push_str(&format!("base-boundaries {}\n", spec.base_boundaries()));
    }
    out
}

pub fn format_auto(endo: &FreeEndo, stars: &[Word]) -> String {
    let mut out = format!("rank {}\n", endo.rank());
    for (i, w) in endo.images().iter().enumerate() {
        out.push_str(&format!("g{} -> {w}\n", i + 1));
    }
    for (j, w) in stars.iter().enumerate() {
        out.push_str(&format!("star {} -> {w}\n", j + 1));
    }
    out
}

fn parse_pos(line: usize, s: &str) -> Result<usize, FormatError> {
    match s.strip_prefix('@') {
        Some(p) => parse_num(line, p, "a position"),
        None => err(line, format!("expected `@<pos>`, found `{s}`")),
    }
}

fn parse_step(line: usize, l: &str, k: usize) -> Result<Step, FormatError> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    let step = match toks[..] {
        ["cancel", p] => Step::Cancel { pos: parse_pos(line, p)? },
        ["insert", p, sym] => {
            let w = TwistWord::parse(sym, k).map_err(|e| FormatError { line, msg: e.to_string() })?;
            let letter: TwistLetter = w.letters[0];
            Step::Insert { pos: parse_pos(line, p)?, letter }
        }
        ["commute", p] | ["commute", p, "letters"] => {
            Step::Commute { pos: parse_pos(line, p)?, shape: CommuteShape::Letters }
        }
        ["commute", p, "block-left"] => Step::Commute { pos: parse_pos(line, p)?, shape: CommuteShape::BlockLeft },
        ["commute", p, "block-right"] => Step::Commute { pos: parse_pos(line, p)?, shape: CommuteShape::BlockRight },
        ["braid", p, o] => {
            let o = parse_num(line, o, "an orientation")?;
            if !(1..=6).contains(&o) {
                return err(line, format!("orientation {o} is not in 1..6"));
            }
            Step::Braid { pos: parse_pos(line, p)?, orientation: o as u8 }
        }
        ["rotate", p, kk] | ["rotate", p, kk, _] => {
            let rk = match kk.strip_prefix("k=") {
                Some(v) => parse_num(line, v, "a bracelet size")?,
                None => return err(line, format!("expected `k=<k>`, found `{kk}`")),
            };
            let by = match toks.get(3) {
                None => 1,
                Some(b) => match b.strip_prefix("by=") {
                    Some(v) => parse_num(line, v, "a rotation amount")?,
                    None => return err(line, format!("expected `by=<s>`, found `{b}`")),
                },
            };
            Step::Rotate { pos: parse_pos(line, p)?, k: rk, by }
        }
        _ => return err(line, format!("unknown step `{l}`")),
    };
    Ok(step)
}

/// `start: <word>`, step lines, `end: <word>`; twist indices are reduced mod `k`.
pub fn parse_derivation(text: &str, k: usize) -> Result<Derivation, FormatError> {
    let mut start = None;
    let mut end = None;
    let mut steps = Vec::new();
    let mut last = 1;
    for (line, l) in content_lines(text) {
        last = line;
        let word = |s: &str| TwistWord::parse(s, k).map_err(|e| FormatError { line, msg: e.to_string() });
        if let Some(rest) = l.strip_prefix("start:") {
            if start.is_some() || !steps.is_empty() {
                return err(line, "`start:` must come first, once");
            }
            start = Some(word(rest)?);
        } else if let Some(rest) = l.strip_prefix("end:") {
            if end.is_some() {
                return err(line, "`end:` given twice");
            }
            end = Some(word(rest)?);
        } else {
            if start.is_none() {
                return err(line, "step before `start:`");
            }
            if end.is_some() {
                return err(line, "step after `end:`");
            }
            steps.push(parse_step(line, l, k)?);
        }
    }
    match (start, end) {
        (Some(start), Some(end)) => Ok(Derivation { start, steps, end }),
        (None, _) => err(last, "missing `start:` line"),
        (_, None) => err(last, "missing `end:` line"),
    }
}

pub fn format_derivation(d: &Derivation) -> String {
    let mut out = format!("start: {}\n", d.start);
    for s in &d.steps {
        out.push_str(&format!("{s}\n"));
    }
    out.push_str(&format!("end: {}\n", d.end));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use liftkit_core::autos::artin_generator;
    use liftkit_core::twists::{builtin_chainbraid_derivations, builtin_mesh_braid_derivation};

    #[test]
    fn auto_roundtrip() {
        let f = artin_generator(3, 1, false).unwrap();
        let text = format_auto(&f, &[]);
        assert_eq!(text, "rank 3\ng1 -> g1 g2 g1'\ng2 -> g1\ng3 -> g3\n");
        let parsed = parse_auto(&text).unwrap();
        assert_eq!(parsed.endo, f);
        assert!(parsed.stars.is_empty());
    }

    #[test]
    fn auto_errors_carry_lines() {
        assert_eq!(parse_auto("rank 2\ng1 -> g1\nfoo\n").unwrap_err().line, 3);
        assert_eq!(parse_auto("rank 2\ng1 -> g3\ng2 -> g2").unwrap_err().line, 2);
        assert!(parse_auto("rank 2\ng1 -> g1").is_err());
        assert!(parse_auto("rank 1\ng1 -> g1\nstar 2 -> g1").is_err());
        let a = parse_auto("# annulus\nrank 1\ng1 -> g1\nstar 1 -> g1\n").unwrap();
        assert_eq!(a.stars.len(), 1);
    }

    #[test]
    fn cover_roundtrip() {
        let spec = CoverSpec::burau(3, 4).unwrap();
        let text = format_cover(&spec);
        assert_eq!(parse_cover(&text).unwrap(), spec);
        let klein = "rank 2\ndeck table 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\nlabel g1 = 1\nlabel g2 = 2\n";
        let spec = parse_cover(klein).unwrap();
        assert_eq!(spec.deck().order(), 4);
        assert_eq!(parse_cover(&format_cover(&spec)).unwrap(), spec);
        assert_eq!(parse_cover("rank 1\ndeck cyclic 2\nlabel g1 = 1\nbase-boundaries 2\n").unwrap().base_boundaries(), 2);
    }

    #[test]
    fn cover_errors() {
        assert_eq!(parse_cover("rank 2\ndeck cyclic 2\nlabel g1 = 1\nwat\n").unwrap_err().line, 4);
        assert!(parse_cover("rank 1\nlabel g1 = 1\n").is_err());
        assert!(parse_cover("rank 2\ndeck cyclic 4\nlabel g1 = 2\nlabel g2 = 0\n").is_err());
    }

    #[test]
    fn derivation_roundtrip() {
        for k in 3..=5 {
            let d = builtin_mesh_braid_derivation(k).unwrap();
            assert_eq!(parse_derivation(&format_derivation(&d), k).unwrap(), d);
            for nd in builtin_chainbraid_derivations(k).unwrap() {
                let text = format_derivation(&nd.derivation);
                assert_eq!(parse_derivation(&text, k).unwrap(), nd.derivation);
            }
        }
    }

    #[test]
    fn derivation_errors() {
        assert_eq!(parse_derivation("start: A1\nfrobnicate @0\nend: A1\n", 3).unwrap_err().line, 2);
        assert_eq!(parse_derivation("start: A1\nbraid @0 7\nend: A1\n", 3).unwrap_err().line, 2);
        assert!(parse_derivation("start: A1\n", 3).is_err());
        assert!(parse_derivation("cancel @0\nstart: A1\nend: A1\n", 3).is_err());
        let d = parse_derivation("start: \nend:\n", 3).unwrap();
        assert!(d.start.is_empty() && d.steps.is_empty());
        let d = parse_derivation("start: A0 A1\nrotate @0 k=3 by=2\nend: A2 A0\n", 3).unwrap();
        assert_eq!(d.steps, vec![Step::Rotate { pos: 0, k: 3, by: 2 }]);
    }
}
