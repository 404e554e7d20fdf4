//! Words in the operator generators.
//!
//! Tokens: `d+`, `d-`, `T:m`, `Tinv:m`, `z:j`, `y:j`, `phi`, `d*+`, `N`,
//! `SD`, separated by whitespace.  A word acts like a composition read right
//! to left: in `T:1 d+` the operator `d+` is applied first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    DPlus,
    DMinus,
    T(usize),
    TInv(usize),
    Z(usize),
    Y(usize),
    Phi,
    DPlusStar,
    NOp,
    SD,
}

impl Gen {
    /// Grade (n,k) → grade of the image, or why the generator is undefined.
    pub fn target_grade(&self, n: u32, k: usize) -> Result<(u32, usize)> {
        let need_index = |index: usize, max: usize| {
            if index >= 1 && index <= max {
                Ok(())
            } else {
                Err(Error::IndexRange { index, k })
            }
        };
        match *self {
            Gen::DPlus | Gen::DPlusStar => Ok((n + 1, k + 1)),
            Gen::DMinus => {
                if k == 0 {
                    Err(Error::GradeError("d- needs k >= 1".into()))
                } else {
                    Ok((n, k - 1))
                }
            }
            Gen::T(m) | Gen::TInv(m) => {
                if k < 2 {
                    return Err(Error::GradeError(format!("T:{m} needs k >= 2")));
                }
                need_index(m, k - 1)?;
                Ok((n, k))
            }
            Gen::Z(j) => {
                need_index(j, k)?;
                Ok((n, k))
            }
            Gen::Y(j) => {
                need_index(j, k)?;
                Ok((n + 1, k))
            }
            Gen::Phi => {
                if k == 0 {
                    Err(Error::GradeError("phi needs k >= 1".into()))
                } else {
                    Ok((n + 1, k))
                }
            }
            Gen::NOp | Gen::SD => Ok((n, k)),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::DPlus => write!(f, "d+"),
            Gen::DMinus => write!(f, "d-"),
            Gen::T(m) => write!(f, "T:{m}"),
            Gen::TInv(m) => write!(f, "Tinv:{m}"),
            Gen::Z(j) => write!(f, "z:{j}"),
            Gen::Y(j) => write!(f, "y:{j}"),
            Gen::Phi => write!(f, "phi"),
            Gen::DPlusStar => write!(f, "d*+"),
            Gen::NOp => write!(f, "N"),
            Gen::SD => write!(f, "SD"),
        }
    }
}

/// A composition of generators, stored left to right (index 0 applied last).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OperatorWord(pub Vec<Gen>);

impl OperatorWord {
    pub fn identity() -> Self {
        OperatorWord(Vec::new())
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    /// Generators in application order (rightmost first).
    pub fn application_order(&self) -> impl Iterator<Item = &Gen> {
        self.0.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Composition `self ∘ other` (other applied first).
    pub fn then_after(&self, other: &OperatorWord) -> OperatorWord {
        let mut gens = self.0.clone();
        gens.extend(other.0.iter().copied());
        OperatorWord(gens)
    }

    /// Grade of the image of a vector in grade (n,k), with validity checks.
    pub fn target_grade(&self, n: u32, k: usize) -> Result<(u32, usize)> {
        let mut grade = (n, k);
        for (step, gen) in self.application_order().enumerate() {
            grade = gen
                .target_grade(grade.0, grade.1)
                .map_err(|e| Error::WordStep {
                    step: step + 1,
                    msg: e.to_string(),
                })?;
        }
        Ok(grade)
    }
}

impl FromStr for OperatorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut gens = Vec::new();
        let mut pos = 0;
        for tok in s.split_whitespace() {
            pos = s[pos..].find(tok).map_or(pos, |off| pos + off);
            let gen = match tok {
                "d+" => Gen::DPlus,
                "d-" => Gen::DMinus,
                "phi" => Gen::Phi,
                "d*+" => Gen::DPlusStar,
                "N" => Gen::NOp,
                "SD" => Gen::SD,
                _ => {
                    let (name, idx) = tok.split_once(':').ok_or_else(|| Error::Parse {
                        pos,
                        msg: format!("unknown generator {tok:?}"),
                    })?;
                    let index: usize = idx.parse().map_err(|_| Error::Parse {
                        pos,
                        msg: format!("bad index in {tok:?}"),
                    })?;
                    match name {
                        "T" => Gen::T(index),
                        "Tinv" => Gen::TInv(index),
                        "z" => Gen::Z(index),
                        "y" => Gen::Y(index),
                        _ => {
                            return Err(Error::Parse {
                                pos,
                                msg: format!("unknown generator {tok:?}"),
                            })
                        }
                    }
                }
            };
            gens.push(gen);
            pos += tok.len();
        }
        Ok(OperatorWord(gens))
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, gen) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{gen}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_round_trip() {
        let w: OperatorWord = "d- z:1 T:2 Tinv:1 y:2 phi d*+ N SD d+".parse().unwrap();
        assert_eq!(w.to_string(), "d- z:1 T:2 Tinv:1 y:2 phi d*+ N SD d+");
        assert!("bogus".parse::<OperatorWord>().is_err());
        assert!("T:x".parse::<OperatorWord>().is_err());
    }

    #[test]
    fn grade_tracking() {
        let w: OperatorWord = "d- y:1 d+".parse().unwrap();
        assert_eq!(w.target_grade(0, 0).unwrap(), (2, 0));
        // T:1 needs k ≥ 2
        let w: OperatorWord = "T:1 d+".parse().unwrap();
        assert!(w.target_grade(0, 0).is_err());
        assert_eq!(w.target_grade(1, 1).unwrap(), (2, 2));
        // phi and d- need boxes to act on
        assert!("phi"
            .parse::<OperatorWord>()
            .unwrap()
            .target_grade(1, 0)
            .is_err());
        assert!("d-"
            .parse::<OperatorWord>()
            .unwrap()
            .target_grade(1, 0)
            .is_err());
    }
}
