//! Words in a free group on `x1..xm`.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A freely reduced word. Letters are `(index, exponent)` with 0-based
/// index and exponent `±1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    alphabet: usize,
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn empty(alphabet: usize) -> Self {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn letter(alphabet: usize, index: usize, exponent: i8) -> Self {
        assert!(index < alphabet && (exponent == 1 || exponent == -1));
        Word {
            alphabet,
            letters: vec![(index, exponent)],
        }
    }

    pub fn from_letters(alphabet: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        for &(i, e) in &letters {
            if i >= alphabet {
                return Err(Error::Input(format!(
                    "letter x{} outside alphabet of size {alphabet}",
                    i + 1
                )));
            }
            if e != 1 && e != -1 {
                return Err(Error::Input(format!("exponent {e} is not ±1")));
            }
        }
        let mut w = Word { alphabet, letters };
        w.reduce();
        Ok(w)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn reduce(&mut self) {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&(i, e)) if i == l.0 && e == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        self.letters = out;
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        let mut w = Word {
            alphabet: self.alphabet.max(other.alphabet),
            letters,
        };
        w.reduce();
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect(),
        }
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// `c⁻¹ w c`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.inverse().concat(self).concat(c)
    }

    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.alphabet];
        for &(i, e) in &self.letters {
            sums[i] += e as i64;
        }
        sums
    }

    /// Membership in the derived subgroup of the free group.
    pub fn in_commutator_subgroup(&self) -> bool {
        self.exponent_sums().iter().all(|&s| s == 0)
    }

    /// Substitutes `tuple[i]` for `x(i+1)`.
    pub fn evaluate(&self, tuple: &[Permutation]) -> Result<Permutation> {
        if tuple.len() < self.alphabet {
            return Err(Error::Input(format!(
                "word over {} letters evaluated on a {}-tuple",
                self.alphabet,
                tuple.len()
            )));
        }
        let degree = match tuple.first() {
            Some(p) => p.degree(),
            None => {
                return Err(Error::Input("cannot evaluate on an empty tuple".into()));
            }
        };
        let inverses: Vec<Option<Permutation>> = (0..tuple.len())
            .map(|i| {
                self.letters
                    .iter()
                    .any(|&(j, e)| j == i && e < 0)
                    .then(|| tuple[i].inverse())
            })
            .collect();
        let mut acc = Permutation::identity(degree);
        for &(i, e) in &self.letters {
            acc = if e > 0 {
                acc.compose(&tuple[i])
            } else {
                acc.compose(inverses[i].as_ref().unwrap())
            };
        }
        Ok(acc)
    }

    /// Parses `x1 x2 x1^-1 x2^-1`; `1` or an empty string is the empty word.
    pub fn parse(alphabet: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let body = tok
                .strip_prefix('x')
                .ok_or_else(|| Error::Input(format!("bad letter {tok:?}")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Input(format!("bad letter {tok:?}")))?;
            if idx == 0 {
                return Err(Error::Input("letters are numbered from x1".into()));
            }
            let exp: i64 = exp
                .parse()
                .map_err(|_| Error::Input(format!("bad exponent in {tok:?}")))?;
            let unit = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((idx - 1, unit));
            }
        }
        Word::from_letters(alphabet, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, &(i, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if e > 0 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^-1", i + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn evaluate_commutator() {
        let w = Word::parse(2, "x1 x2 x1^-1 x2^-1").unwrap();
        // Composed left to right: 1 -> 2 -> 2 -> 1 -> 3.
        let a = p(3, "(1 2)");
        let b = p(3, "(1 3)");
        let direct = a.compose(&b).compose(&a.inverse()).compose(&b.inverse());
        assert_eq!(w.evaluate(&[a, b]).unwrap(), direct);
        assert_eq!(direct, p(3, "(1 3 2)"));
    }

    #[test]
    fn empty_and_projection() {
        let t = [p(3, "(1 2 3)")];
        assert!(Word::empty(1).evaluate(&t).unwrap().is_identity());
        assert_eq!(Word::parse(1, "x1").unwrap().evaluate(&t).unwrap(), t[0]);
    }

    #[test]
    fn arity_mismatch() {
        let w = Word::parse(2, "x1 x2").unwrap();
        assert!(w.evaluate(&[p(3, "(1 2)")]).is_err());
    }

    #[test]
    fn reduction_and_sums() {
        let w = Word::parse(2, "x1 x2 x2^-1 x1^-1").unwrap();
        assert!(w.is_empty());
        let c = Word::commutator(&Word::letter(2, 0, 1), &Word::letter(2, 1, -1));
        assert!(c.in_commutator_subgroup());
        assert!(!Word::parse(2, "x1 x2 x1").unwrap().in_commutator_subgroup());
        assert_eq!(c.to_string(), "x1^-1 x2 x1 x2^-1");
        assert_eq!(Word::parse(2, &c.to_string()).unwrap(), c);
        assert_eq!(Word::parse(2, "x1^2").unwrap().len(), 2);
    }
}
