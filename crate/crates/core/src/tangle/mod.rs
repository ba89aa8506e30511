//! Framed braid words, closures, Markov moves, and the evaluation of (1,1)-tangles.

mod eval;
pub mod oracle;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

pub use eval::{connected_sum, Evaluator, TangleOperator, DEFAULT_CAP};

use crate::linalg::Dense;
use crate::repn::WeightModule;
use crate::scalar::Backend;

/// A way of evaluating (1,1)-tangle operators on a fixed module.
pub trait TangleEngine<B: Backend>: Send + Sync {
    fn module(&self) -> &WeightModule<B>;

    /// Columns `cols` of the tangle operator of the closure of `word`.
    fn tangle_columns(&self, word: &FramedBraidWord, cols: &[usize]) -> Result<Vec<Vec<B::S>>>;

    fn tangle_operator(&self, word: &FramedBraidWord) -> Result<TangleOperator<B::S>> {
        let m = self.module();
        let d = m.dim();
        let cols = self.tangle_columns(word, &(0..d).collect::<Vec<_>>())?;
        let mut z = Dense::zeros(d, d, &m.backend().zero());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                z.set(i, j, v);
            }
        }
        Ok(TangleOperator { module: m.name().to_string(), matrix: z })
    }
}

/// One generator of the framed braid group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `σ_i^{±1}`, crossing strands `i` and `i+1` (1-based).
    Sigma { i: usize, inverse: bool },
    /// `τ_i^{±1}`, a full framing twist on strand `i` (1-based).
    Tau { i: usize, inverse: bool },
}

impl Letter {
    pub fn inverted(self) -> Letter {
        match self {
            Letter::Sigma { i, inverse } => Letter::Sigma { i, inverse: !inverse },
            Letter::Tau { i, inverse } => Letter::Tau { i, inverse: !inverse },
        }
    }

    fn shifted(self, k: usize) -> Letter {
        match self {
            Letter::Sigma { i, inverse } => Letter::Sigma { i: i + k, inverse },
            Letter::Tau { i, inverse } => Letter::Tau { i: i + k, inverse },
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Sigma { i, inverse: false } => write!(f, "s{i}"),
            Letter::Sigma { i, inverse: true } => write!(f, "S{i}"),
            Letter::Tau { i, inverse: false } => write!(f, "t{i}"),
            Letter::Tau { i, inverse: true } => write!(f, "T{i}"),
        }
    }
}

/// A word in `σ_i^{±1}`, `τ_i^{±1}` on a fixed number of strands.
///
/// Letters act in reading order: the first letter is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedBraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl FramedBraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidParameter("a braid needs at least one strand".into()));
        }
        for l in &letters {
            let ok = match *l {
                Letter::Sigma { i, .. } => i >= 1 && i < strands,
                Letter::Tau { i, .. } => i >= 1 && i <= strands,
            };
            if !ok {
                return Err(Error::Parse(format!("letter {l} out of range for {strands} strands")));
            }
        }
        Ok(FramedBraidWord { strands, letters })
    }

    /// Parses whitespace-separated tokens `s<i>`, `S<i>`, `t<i>`, `T<i>`, and `s<i>^-1` / `t<i>^-1`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            letters.push(parse_token(tok)?);
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// The underlying permutation: `perm[k]` is where the strand starting at `k` ends (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        // pos[k] = current position of the strand that started at k
        for l in &self.letters {
            if let Letter::Sigma { i, .. } = *l {
                for p in pos.iter_mut() {
                    if *p == i - 1 {
                        *p = i;
                    } else if *p == i {
                        *p = i - 1;
                    }
                }
            }
        }
        pos
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = perm[k];
            }
        }
        cycles
    }

    pub fn ensure_knot(&self) -> Result<()> {
        match self.closure_components() {
            1 => Ok(()),
            components => Err(Error::MultiComponent { components }),
        }
    }

    /// Exponent sum of the `σ` letters.
    pub fn writhe(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Sigma { inverse: false, .. } => 1,
                Letter::Sigma { inverse: true, .. } => -1,
                _ => 0,
            })
            .sum()
    }

    /// Exponent sum of the `τ` letters.
    pub fn twists(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Tau { inverse: false, .. } => 1,
                Letter::Tau { inverse: true, .. } => -1,
                _ => 0,
            })
            .sum()
    }

    /// Blackboard framing of the closure: writhe plus twists.
    pub fn framing(&self) -> i64 {
        self.writhe() + self.twists()
    }

    pub fn inverse(&self) -> Self {
        FramedBraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(FramedBraidWord { strands: self.strands, letters })
    }

    /// The same word on one more strand (the new strand is the last one).
    pub fn include(&self) -> Self {
        FramedBraidWord { strands: self.strands + 1, letters: self.letters.clone() }
    }

    /// A braid whose closure is the connected sum of the two closures: `other` is shifted to
    /// start on the last strand of `self`.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let shift = self.strands - 1;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|l| l.shifted(shift)));
        FramedBraidWord { strands: self.strands + other.strands - 1, letters }
    }
}

impl fmt::Display for FramedBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn parse_token(tok: &str) -> Result<Letter> {
    let bad = || Error::Parse(format!("unknown token {tok:?}"));
    let (body, inv_suffix) = match tok.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (tok, false),
    };
    let mut chars = body.chars();
    let head = chars.next().ok_or_else(bad)?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let i: usize = digits.parse().map_err(|_| bad())?;
    if i == 0 {
        return Err(bad());
    }
    let (sigma, upper) = match head {
        's' => (true, false),
        'S' => (true, true),
        't' => (false, false),
        'T' => (false, true),
        _ => return Err(bad()),
    };
    if upper && inv_suffix {
        return Err(bad());
    }
    let inverse = upper || inv_suffix;
    Ok(if sigma { Letter::Sigma { i, inverse } } else { Letter::Tau { i, inverse } })
}

/// `g b g^{-1}` (Markov move (i)).
pub fn markov_conjugate(b: &FramedBraidWord, g: &FramedBraidWord) -> Result<FramedBraidWord> {
    g.then(b)?.then(&g.inverse())
}

/// Which side of Markov move (ii) to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stabilization {
    /// `b τ_n^{±1}` on the same `n` strands.
    TauSide,
    /// `i(b) σ_n^{±1}` on `n + 1` strands.
    SigmaSide,
}

/// Markov move (ii): `b τ_n^{±1} ↔ i(b) σ_n^{±1}`.
pub fn markov_stabilize(b: &FramedBraidWord, sign: i8, mode: Stabilization) -> Result<FramedBraidWord> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameter(format!("stabilization sign must be ±1, got {sign}")));
    }
    let n = b.strands;
    let inverse = sign < 0;
    match mode {
        Stabilization::TauSide => {
            let mut letters = b.letters.clone();
            letters.push(Letter::Tau { i: n, inverse });
            FramedBraidWord::new(n, letters)
        }
        Stabilization::SigmaSide => {
            let mut letters = b.letters.clone();
            letters.push(Letter::Sigma { i: n, inverse });
            FramedBraidWord::new(n + 1, letters)
        }
    }
}

/// A named knot with a braid presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub braid: &'static str,
    pub strands: usize,
}

pub const PRESETS: &[Preset] = &[
    Preset { name: "unknot", braid: "", strands: 1 },
    Preset { name: "trefoil", braid: "s1 s1 s1", strands: 2 },
    Preset { name: "figure8", braid: "s1 S2 s1 S2", strands: 3 },
    Preset { name: "cinquefoil", braid: "s1 s1 s1 s1 s1", strands: 2 },
];

impl Preset {
    pub fn word(&self) -> FramedBraidWord {
        FramedBraidWord::parse(self.braid, self.strands).expect("preset braids parse")
    }
}

pub fn preset(name: &str) -> Result<FramedBraidWord> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .map(Preset::word)
        .ok_or_else(|| Error::Parse(format!("unknown preset {name:?}")))
}

/// A uniformly random letter on `n` strands; `τ` letters are drawn with probability `twist_prob`.
pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, n: usize, twist_prob: f64) -> Letter {
    let inverse = rng.gen_bool(0.5);
    if n == 1 || rng.gen_bool(twist_prob) {
        Letter::Tau { i: rng.gen_range(1..=n), inverse }
    } else {
        Letter::Sigma { i: rng.gen_range(1..n), inverse }
    }
}

/// Draws random framed braids (strands `1..=max_strands`, length `0..=max_len`) until the
/// closure is a knot.
pub fn random_knot_braid<R: Rng + ?Sized>(rng: &mut R, max_strands: usize, max_len: usize) -> FramedBraidWord {
    loop {
        let n = rng.gen_range(1..=max_strands);
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len).map(|_| random_letter(rng, n, 0.2)).collect();
        let b = FramedBraidWord { strands: n, letters };
        if b.closure_components() == 1 {
            return b;
        }
    }
}

/// A random word on `n` strands of length `0..=max_len` (closure not constrained).
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> FramedBraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| random_letter(rng, n, 0.2)).collect();
    FramedBraidWord { strands: n, letters }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let t = FramedBraidWord::parse("s1 s1 s1", 2).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.writhe(), 3);
        let f = FramedBraidWord::parse("s1 S2 s1 S2", 3).unwrap();
        assert_eq!(f.writhe(), 0);
        assert_eq!(f.to_string(), "s1 S2 s1 S2");
        assert!(matches!(FramedBraidWord::parse("s3", 2), Err(Error::Parse(_))));
        assert!(FramedBraidWord::parse("t2", 2).is_ok());
        assert!(FramedBraidWord::parse("t3", 2).is_err());
        assert!(FramedBraidWord::parse("x1", 2).is_err());
        assert!(FramedBraidWord::parse("s0", 2).is_err());
        assert!(FramedBraidWord::parse("S1^-1", 2).is_err());
        let w = FramedBraidWord::parse("s1^-1 t2^-1", 2).unwrap();
        assert_eq!(w.to_string(), "S1 T2");
    }

    #[test]
    fn components() {
        assert_eq!(FramedBraidWord::parse("", 1).unwrap().closure_components(), 1);
        assert_eq!(FramedBraidWord::parse("s1 s1 s1", 2).unwrap().closure_components(), 1);
        assert_eq!(FramedBraidWord::parse("s1 s1", 2).unwrap().closure_components(), 2);
        assert_eq!(FramedBraidWord::parse("s1 S2 s1 S2", 3).unwrap().closure_components(), 1);
        assert_eq!(
            FramedBraidWord::parse("s1 s1", 3).unwrap().ensure_knot(),
            Err(Error::MultiComponent { components: 3 })
        );
    }

    #[test]
    fn markov_moves() {
        let b = preset("trefoil").unwrap();
        let g = FramedBraidWord::parse("S1 t2", 2).unwrap();
        let c = markov_conjugate(&b, &g).unwrap();
        assert_eq!(c.to_string(), "S1 t2 s1 s1 s1 T2 s1");
        let st = markov_stabilize(&b, 1, Stabilization::SigmaSide).unwrap();
        assert_eq!((st.strands(), st.to_string().as_str()), (3, "s1 s1 s1 s2"));
        let tt = markov_stabilize(&b, -1, Stabilization::TauSide).unwrap();
        assert_eq!(tt.to_string(), "s1 s1 s1 T2");
        assert_eq!(st.framing(), tt.framing() + 2);
        let three = preset("figure8").unwrap();
        assert_eq!(
            markov_conjugate(&b, &three).unwrap_err(),
            Error::StrandMismatch { left: 3, right: 2 }
        );
    }

    #[test]
    fn connected_sum_word() {
        let t = preset("trefoil").unwrap();
        let f = preset("figure8").unwrap();
        let s = t.connected_sum(&f);
        assert_eq!(s.strands(), 4);
        assert_eq!(s.to_string(), "s1 s1 s1 s2 S3 s2 S3");
        assert_eq!(s.closure_components(), 1);
    }

    #[test]
    fn random_braids_are_knots() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let b = random_knot_braid(&mut rng, 3, 8);
            assert_eq!(b.closure_components(), 1);
            assert!(b.len() <= 8 && b.strands() <= 3);
        }
    }
}
