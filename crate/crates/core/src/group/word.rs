use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A generator or its inverse.
///
/// The derived order puts `g` before `g^-1` and lower ids first, which is the
/// letter order used for shortlex comparisons.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: i64,
    pub inv: bool,
}

impl Letter {
    pub const fn new(gen: i64, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub const fn pos(gen: i64) -> Self {
        Letter { gen, inv: false }
    }

    pub const fn neg(gen: i64) -> Self {
        Letter { gen, inv: true }
    }

    pub const fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub const fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    pub const fn shifted(self, by: i64) -> Self {
        Letter { gen: self.gen + by, inv: self.inv }
    }
}

/// A freely reduced word over integer-indexed generators.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn identity() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Builds a word from `(generator, exponent)` pairs; exponents may be any integer.
    pub fn from_powers(powers: &[(i64, i64)]) -> Self {
        Word::reduce(powers.iter().flat_map(|&(g, e)| {
            let l = Letter::new(g, e < 0);
            core::iter::repeat_n(l, e.unsigned_abs() as usize)
        }))
    }

    pub fn gen(g: i64) -> Self {
        Word(alloc::vec![Letter::pos(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Image under the index shift `g_i -> g_{i+by}`.
    pub fn shifted(&self, by: i64) -> Self {
        Word(self.0.iter().map(|l| l.shifted(by)).collect())
    }

    pub fn min_gen(&self) -> Option<i64> {
        self.0.iter().map(|l| l.gen).min()
    }

    pub fn max_gen(&self) -> Option<i64> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, gen: i64) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exponent()).sum()
    }

    pub fn is_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| w[0] != w[1].inverse())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", l.gen)?;
            if l.inv {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}
