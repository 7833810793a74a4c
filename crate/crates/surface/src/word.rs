use crate::{Error, Result};
use std::fmt;

/// Reduced word in the pants group, free on `γ₁` (letter `1`) and `γ₃`
/// (letter `2`); negative letters are inverses. `γ₂ = γ₃⁻¹γ₁⁻¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i8>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub(crate) fn letter(l: i8) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        for &l in &other.0 {
            if v.last() == Some(&-l) {
                v.pop();
            } else {
                v.push(l);
            }
        }
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Word of the peripheral generator `γ_{k}` (`k ∈ 1..=3`).
    pub fn peripheral(k: usize) -> Word {
        match k {
            1 => Word(vec![1]),
            2 => Word(vec![-2, -1]),
            _ => Word(vec![2]),
        }
    }

    /// Product of peripheral generators, `±k` meaning `γ_k^{±1}`.
    pub fn from_generators(gens: &[i32]) -> Result<Word> {
        let mut w = Word::identity();
        for &g in gens {
            let k = g.unsigned_abs() as usize;
            if !(1..=3).contains(&k) {
                return Err(Error::Format(format!("no generator {g}")));
            }
            let p = Word::peripheral(k);
            w = w.mul(&if g > 0 { p } else { p.inverse() });
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let g = if l.abs() == 1 { "g1" } else { "g3" };
                if *l > 0 {
                    g.to_string()
                } else {
                    format!("{g}^-1")
                }
            })
            .collect();
        write!(f, "{}", s.join(" "))
    }
}
