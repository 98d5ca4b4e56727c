//! Text codecs: PD terms, Dowker–Thistlethwaite codes and braid words.

use crate::error::{KnotError, Result};

use super::{rotate_dart, Arc, Diagram};

/// DT codes above this size are rejected; realization searches 2^(n-1) embeddings.
pub const DT_MAX_CROSSINGS: usize = 22;

/// Parses whitespace-separated `X(a,b,c,d)` terms (square brackets and
/// separating commas are tolerated).
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let tuples = parse_pd_tuples(text)?;
    Diagram::from_pd(tuples)
}

pub(crate) fn parse_pd_tuples(text: &str) -> Result<Vec<[Arc; 4]>> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut tuples = Vec::new();
    let skip = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i].is_ascii_whitespace() || bytes[*i] == b',') {
            *i += 1;
        }
    };
    loop {
        skip(&mut i);
        if i >= bytes.len() {
            break;
        }
        if bytes[i] != b'X' {
            return Err(KnotError::Syntax(format!("expected 'X' at byte {i}")));
        }
        i += 1;
        let close = match bytes.get(i) {
            Some(b'(') => b')',
            Some(b'[') => b']',
            _ => return Err(KnotError::Syntax(format!("expected '(' after 'X' at byte {i}"))),
        };
        i += 1;
        let end = text[i..]
            .find(close as char)
            .map(|p| p + i)
            .ok_or_else(|| KnotError::Syntax("unterminated crossing term".into()))?;
        let fields: Vec<&str> = text[i..end].split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(KnotError::Syntax(format!(
                "crossing term `{}` must have 4 labels",
                &text[i..end]
            )));
        }
        let mut t = [0; 4];
        for (slot, f) in t.iter_mut().zip(&fields) {
            *slot = f
                .parse::<Arc>()
                .map_err(|_| KnotError::Syntax(format!("bad arc label `{f}`")))?;
            if *slot == 0 {
                return Err(KnotError::Syntax("arc labels must be positive".into()));
            }
        }
        tuples.push(t);
        i = end + 1;
    }
    if tuples.is_empty() {
        return Err(KnotError::Syntax("no crossing terms".into()));
    }
    Ok(tuples)
}

/// Parses DT text: signed even integers separated by commas and/or spaces,
/// optionally wrapped in brackets. Empty text is the unknot.
pub fn parse_dt_str(text: &str) -> Result<Diagram> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let code = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| KnotError::Syntax(format!("bad DT entry `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    parse_dt(&code)
}

/// Realizes a DT code as a planar knot diagram. Arc `p` is the arc entering
/// the `p`-th crossing visit. A positive entry marks the odd visit as the
/// under-pass. One of the two mirror-image embeddings is returned.
pub fn parse_dt(code: &[i64]) -> Result<Diagram> {
    let n = code.len();
    if n == 0 {
        return Ok(Diagram::unknot());
    }
    if n > DT_MAX_CROSSINGS {
        return Err(KnotError::Resource(format!(
            "DT code with {n} crossings exceeds the {DT_MAX_CROSSINGS}-crossing realization cap"
        )));
    }
    let mut used = vec![false; 2 * n + 1];
    for &a in code {
        let e = a.unsigned_abs() as usize;
        if a % 2 != 0 || e < 2 || e > 2 * n {
            return Err(KnotError::Validation(format!(
                "DT entry {a} is not an even integer in ±[2, {}]",
                2 * n
            )));
        }
        if used[e] {
            return Err(KnotError::Validation(format!("DT entry {a} repeated")));
        }
        used[e] = true;
    }
    let arc_out = |p: usize| -> Arc { (p % (2 * n) + 1) as Arc };
    // (in1, out1, in2, out2, odd visit is under)
    let sites: Vec<(Arc, Arc, Arc, Arc, bool)> = code
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let o = 2 * i + 1;
            let e = a.unsigned_abs() as usize;
            (o as Arc, arc_out(o), e as Arc, arc_out(e), a > 0)
        })
        .collect();
    let build = |mask: u64| -> Vec<[Arc; 4]> {
        sites
            .iter()
            .enumerate()
            .map(|(i, &(in1, out1, in2, out2, odd_under))| {
                let ring = if mask >> i & 1 == 0 {
                    [in1, in2, out1, out2]
                } else {
                    [in1, out2, out1, in2]
                };
                let start = if odd_under {
                    0
                } else {
                    ring.iter().position(|&a| a == in2).expect("in2 in ring")
                };
                let mut t = ring;
                t.rotate_left(start);
                t
            })
            .collect()
    };
    for free in 0..(1u64 << (n - 1)) {
        let tuples = build(free << 1);
        if count_faces_dense(&tuples) == n + 2 {
            return Diagram::from_pd(tuples);
        }
    }
    Err(KnotError::Validation(format!("DT code {code:?} is not realizable")))
}

/// Face count for tuples whose labels are exactly 1..=2n.
fn count_faces_dense(tuples: &[[Arc; 4]]) -> usize {
    let darts = 4 * tuples.len();
    let mut first = vec![usize::MAX; darts / 2 + 1];
    let mut partner = vec![0; darts];
    for d in 0..darts {
        let a = tuples[d / 4][d & 3] as usize;
        if first[a] == usize::MAX {
            first[a] = d;
        } else {
            partner[d] = first[a];
            partner[first[a]] = d;
        }
    }
    let mut seen = vec![false; darts];
    let mut faces = 0;
    for start in 0..darts {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            c = partner[rotate_dart(c, 1)];
        }
    }
    faces
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    /// Signed generator indices: `i` is σ_i, `-i` its inverse.
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord> {
        if strands < 2 {
            return Err(KnotError::Domain(format!("a braid needs at least 2 strands, got {strands}")));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(KnotError::Domain(format!(
                    "generator {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            if *l < 0 {
                write!(f, " -s{}", -l)?;
            } else {
                write!(f, " s{l}")?;
            }
        }
        Ok(())
    }
}

/// Parses `n: s1 -s2 s1 ...`; the `s` prefix is optional.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let (head, body) = text
        .split_once(':')
        .ok_or_else(|| KnotError::Syntax("braid word must look like `n: s1 -s2 ...`".into()))?;
    let strands = head
        .trim()
        .parse::<usize>()
        .map_err(|_| KnotError::Syntax(format!("bad strand count `{}`", head.trim())))?;
    let letters = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|tok| {
            let (neg, rest) = match tok.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, tok),
            };
            let rest = rest.strip_prefix('s').unwrap_or(rest);
            let i = rest
                .parse::<i32>()
                .map_err(|_| KnotError::Syntax(format!("bad braid letter `{tok}`")))?;
            if i <= 0 {
                return Err(KnotError::Syntax(format!("bad braid letter `{tok}`")));
            }
            Ok(if neg { -i } else { i })
        })
        .collect::<Result<Vec<_>>>()?;
    BraidWord::new(strands, letters)
}

impl Diagram {
    /// Closure of a braid whose strands run upward; σ_i is a positive crossing.
    pub fn from_braid(w: &BraidWord) -> Result<Diagram> {
        let n = w.strands;
        let mut touched = vec![false; n];
        for &l in &w.letters {
            let i = l.unsigned_abs() as usize;
            touched[i - 1] = true;
            touched[i] = true;
        }
        if touched.iter().any(|t| !t) {
            return Err(KnotError::Validation(
                "braid closure is split: some strand has no crossings".into(),
            ));
        }
        let mut cur: Vec<Arc> = (1..=n as Arc).collect();
        let mut next = n as Arc + 1;
        let mut tuples = Vec::with_capacity(w.letters.len());
        for &l in &w.letters {
            let r = l.unsigned_abs() as usize;
            let left = r - 1;
            let (al, ar) = (cur[left], cur[r]);
            let (bl, br) = (next, next + 1);
            next += 2;
            tuples.push(if l > 0 { [ar, br, bl, al] } else { [al, ar, br, bl] });
            cur[left] = bl;
            cur[r] = br;
        }
        let close: std::collections::HashMap<Arc, Arc> =
            cur.iter().enumerate().map(|(k, &a)| (a, k as Arc + 1)).collect();
        for t in &mut tuples {
            for a in t.iter_mut() {
                if let Some(&b) = close.get(a) {
                    *a = b;
                }
            }
        }
        Ok(Diagram::from_pd(tuples)?.with_braid_strands(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pd_syntax_errors() {
        for bad in ["", "X(1,2,3)", "Y(1,2,3,4)", "X(1,2,3,a)", "X(1,2,3,4", "X(0,0,1,1)"] {
            assert!(matches!(parse_pd(bad), Err(KnotError::Syntax(_))), "{bad}");
        }
    }

    #[test]
    fn pd_round_trip_text() {
        let text = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
        assert_eq!(parse_pd(text).unwrap().to_pd(), text);
        assert_eq!(parse_pd("X[1, 4, 2, 5], X[3,6,4,1],X[5,2,6,3]").unwrap().to_pd(), text);
    }

    #[test]
    fn dt_validation() {
        assert!(matches!(parse_dt(&[3, 6, 2]), Err(KnotError::Validation(_))));
        assert!(matches!(parse_dt(&[4, 4, 2]), Err(KnotError::Validation(_))));
        assert!(matches!(parse_dt(&[4, 8, 2]), Err(KnotError::Validation(_))));
        assert!(matches!(parse_dt_str("4 x 2"), Err(KnotError::Syntax(_))));
        assert_eq!(parse_dt_str("").unwrap().crossing_number(), 0);
    }

    #[test]
    fn dt_round_trips() {
        for code in [vec![4, 6, 2], vec![4, 6, 8, 2], vec![6, 8, 10, 2, 4], vec![6, 10, 12, 14, 4, 2, 8], vec![4, 8, -12, 2, -14, -16, -6, -10]] {
            let d = parse_dt(&code).unwrap();
            assert_eq!(d.crossing_number(), code.len());
            assert_eq!(d.to_dt().unwrap(), code);
        }
        let d = parse_dt_str("[4, 6, 8, 2]").unwrap();
        assert!(d.is_alternating() && d.is_reduced());
    }

    #[test]
    fn braid_parsing() {
        let w = parse_braid("3: s1 -s2 1 -2").unwrap();
        assert_eq!(w.letters, vec![1, -2, 1, -2]);
        assert_eq!(w.to_string(), "3: s1 -s2 s1 -s2");
        assert!(matches!(parse_braid("3 s1"), Err(KnotError::Syntax(_))));
        assert!(matches!(parse_braid("2: s2"), Err(KnotError::Domain(_))));
        assert!(matches!(parse_braid("1: "), Err(KnotError::Domain(_))));
    }

    #[test]
    fn braid_closures() {
        let t = Diagram::from_braid(&BraidWord::new(2, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(t.crossing_number(), 3);
        assert_eq!(t.writhe(), 3);
        assert!(t.is_knot() && t.is_alternating());
        let u = Diagram::from_braid(&BraidWord::new(2, vec![1]).unwrap()).unwrap();
        assert_eq!(u.components(), 1);
        let hopf = Diagram::from_braid(&BraidWord::new(2, vec![-1, -1]).unwrap()).unwrap();
        assert_eq!(hopf.components(), 2);
        assert_eq!(hopf.writhe(), -2);
        assert!(Diagram::from_braid(&BraidWord::new(3, vec![1, 1]).unwrap()).is_err());
    }
}
