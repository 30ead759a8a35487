//! Free `⊗`- and `⊗̇`-quasi-crystal monoids over a base quasi-crystal.
//!
//! Word-level weight, operators, and statistics are evaluated by the
//! signature rule: each letter contributes `−^{ε_i} +^{φ_i}` (or the zero
//! element when `ε_i = +∞`) and the contributions multiply in the bicyclic
//! monoid with zero `B₀` (tensor mode, relation `+− = ε`) or in the zero
//! monoid `Z₀` (quasi-tensor mode, relation `+− = 0`). Signatures carry the
//! positions of the letters that originate the rightmost surviving `−` and
//! the leftmost surviving `+`, so one left-to-right pass answers every
//! query without re-scanning the word. Word spaces are exponential; nothing
//! here materializes a product carrier.

use std::cmp::Ordering;

use crate::crystal::{EltId, QuasiCrystal};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::products::ProductMode;
use crate::rootsys::Weight;

/// A finite sequence of base-carrier letters (possibly empty).
///
/// Ordering is shortlex: first by length, then letter-by-letter in carrier
/// order, which keeps every sorted listing deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<EltId>);

impl Word {
    pub fn new(letters: Vec<EltId>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[EltId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Copy of the word with the letter at `pos` replaced.
    pub fn with_letter(&self, pos: usize, letter: EltId) -> Word {
        let mut letters = self.0.clone();
        letters[pos] = letter;
        Word(letters)
    }

    /// Parse a word literal over `base`.
    ///
    /// Tokens are whitespace-separated element names (`"1 2 -2"`); the empty
    /// string is the empty word. As a convenience for single-digit
    /// alphabets, an unbroken run of digits that names no element is read
    /// letter by letter, so `"112"` means `1 1 2`.
    pub fn parse(base: &QuasiCrystal, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if let Some(id) = base.element_by_name(token) {
                letters.push(id);
            } else if token.len() > 1 && token.chars().all(|c| c.is_ascii_digit()) {
                for ch in token.chars() {
                    match base.element_by_name(&ch.to_string()) {
                        Some(id) => letters.push(id),
                        None => {
                            return Err(Error::ForeignLetter {
                                token: ch.to_string(),
                                position: letters.len(),
                            })
                        }
                    }
                }
            } else {
                return Err(Error::ForeignLetter {
                    token: token.to_string(),
                    position: letters.len(),
                });
            }
        }
        Ok(Word(letters))
    }

    /// Render as a space-separated list of element names; `""` for the
    /// empty word.
    pub fn display(&self, base: &QuasiCrystal) -> String {
        self.0
            .iter()
            .map(|&x| base.name(x))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// A reduced signature `−^a +^b` with position bookkeeping, or the zero
/// element of the signature monoid.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Signature {
    Zero,
    Reduced(Reduced),
}

/// The non-zero case: `minus` counts surviving `−`, `plus` counts surviving
/// `+`; the position fields name the letters struck by `e_i` and `f_i`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Reduced {
    pub minus: i64,
    pub plus: i64,
    pub rightmost_minus: Option<usize>,
    pub leftmost_plus: Option<usize>,
}

impl Signature {
    /// The identity `(0, 0)` of both signature monoids.
    pub fn identity() -> Signature {
        Signature::Reduced(Reduced {
            minus: 0,
            plus: 0,
            rightmost_minus: None,
            leftmost_plus: None,
        })
    }

    /// The contribution of one letter sitting at `position`.
    fn of_letter(base: &QuasiCrystal, pos: usize, letter: EltId, position: usize) -> Signature {
        match base.eps_pos(pos, letter).finite() {
            None => Signature::Zero,
            Some(minus) => {
                let plus = base
                    .phi_pos(pos, letter)
                    .finite()
                    .expect("phi finite whenever eps is finite in a valid base");
                Signature::Reduced(Reduced {
                    minus,
                    plus,
                    rightmost_minus: (minus > 0).then_some(position),
                    leftmost_plus: (plus > 0).then_some(position),
                })
            }
        }
    }

    /// Compose two signatures left-to-right in the signature monoid of the
    /// given mode. Zero absorbs in both monoids; in `B₀` the middle block
    /// `+^{b} −^{c}` cancels pairwise, in `Z₀` it collapses everything to
    /// zero as soon as `b > 0` and `c > 0`.
    pub fn compose(self, rhs: Signature, mode: ProductMode) -> Signature {
        let (Signature::Reduced(a), Signature::Reduced(b)) = (self, rhs) else {
            return Signature::Zero;
        };
        match mode {
            ProductMode::Tensor => {
                let minus = a.minus + (b.minus - a.plus).max(0);
                let plus = b.plus + (a.plus - b.minus).max(0);
                Signature::Reduced(Reduced {
                    minus,
                    plus,
                    rightmost_minus: if b.minus > a.plus {
                        b.rightmost_minus
                    } else if a.minus > 0 {
                        a.rightmost_minus
                    } else {
                        None
                    },
                    leftmost_plus: if a.plus > b.minus {
                        a.leftmost_plus
                    } else if b.plus > 0 {
                        b.leftmost_plus
                    } else {
                        None
                    },
                })
            }
            ProductMode::QuasiTensor => {
                if a.plus > 0 && b.minus > 0 {
                    return Signature::Zero;
                }
                Signature::Reduced(Reduced {
                    minus: a.minus + b.minus,
                    plus: a.plus + b.plus,
                    rightmost_minus: if b.minus > 0 {
                        b.rightmost_minus
                    } else {
                        a.rightmost_minus
                    },
                    leftmost_plus: if a.plus > 0 {
                        a.leftmost_plus
                    } else {
                        b.leftmost_plus
                    },
                })
            }
        }
    }

    /// `(ε_i, φ_i)` of the word this signature was computed from.
    pub fn stats(self) -> (ExtInt, ExtInt) {
        match self {
            Signature::Zero => (ExtInt::PlusInf, ExtInt::PlusInf),
            Signature::Reduced(r) => (ExtInt::Finite(r.minus), ExtInt::Finite(r.plus)),
        }
    }
}

fn check_word(base: &QuasiCrystal, w: &Word) -> Result<()> {
    for (position, &x) in w.letters().iter().enumerate() {
        if x.0 >= base.len() {
            return Err(Error::ForeignLetter {
                token: format!("#{}", x.0),
                position,
            });
        }
    }
    Ok(())
}

fn check_index(base: &QuasiCrystal, i: usize) -> Result<usize> {
    base.sys().index_pos(i)
}

/// The `i`-signature of `w` for the tensor product (`B₀` evaluation).
pub fn sgn_tensor(base: &QuasiCrystal, i: usize, w: &Word) -> Result<Signature> {
    check_word(base, w)?;
    Ok(sgn_at(ProductMode::Tensor, base, check_index(base, i)?, w))
}

/// The `i`-signature of `w` for the quasi-tensor product (`Z₀` evaluation).
pub fn sgn_qtensor(base: &QuasiCrystal, i: usize, w: &Word) -> Result<Signature> {
    check_word(base, w)?;
    Ok(sgn_at(ProductMode::QuasiTensor, base, check_index(base, i)?, w))
}

/// The `i`-signature of `w` in the given mode.
pub fn sgn(mode: ProductMode, base: &QuasiCrystal, i: usize, w: &Word) -> Result<Signature> {
    check_word(base, w)?;
    Ok(sgn_at(mode, base, check_index(base, i)?, w))
}

pub(crate) fn sgn_at(mode: ProductMode, base: &QuasiCrystal, pos: usize, w: &Word) -> Signature {
    let mut acc = Signature::identity();
    for (position, &x) in w.letters().iter().enumerate() {
        acc = acc.compose(Signature::of_letter(base, pos, x, position), mode);
        if acc == Signature::Zero {
            return acc;
        }
    }
    acc
}

/// `(ε_i(w), φ_i(w))` in the free monoid of the given mode. The zero
/// signature encodes `(+∞, +∞)`.
pub fn word_stats(
    mode: ProductMode,
    base: &QuasiCrystal,
    i: usize,
    w: &Word,
) -> Result<(ExtInt, ExtInt)> {
    sgn(mode, base, i, w).map(Signature::stats)
}

/// `e_i(w)`: apply the base raising operator to the letter originating the
/// rightmost surviving `−`, or `⊥` when the statistic is 0 or `+∞`.
pub fn word_e(mode: ProductMode, base: &QuasiCrystal, i: usize, w: &Word) -> Result<Option<Word>> {
    check_word(base, w)?;
    Ok(word_e_at(mode, base, check_index(base, i)?, w))
}

/// `f_i(w)`: apply the base lowering operator to the letter originating the
/// leftmost surviving `+`, or `⊥` when the statistic is 0 or `+∞`.
pub fn word_f(mode: ProductMode, base: &QuasiCrystal, i: usize, w: &Word) -> Result<Option<Word>> {
    check_word(base, w)?;
    Ok(word_f_at(mode, base, check_index(base, i)?, w))
}

pub(crate) fn word_e_at(
    mode: ProductMode,
    base: &QuasiCrystal,
    pos: usize,
    w: &Word,
) -> Option<Word> {
    match sgn_at(mode, base, pos, w) {
        Signature::Zero => None,
        Signature::Reduced(r) => {
            let p = r.rightmost_minus?;
            let raised = base
                .e_pos(pos, w.letters()[p])
                .expect("e defined on the letter originating a surviving minus");
            Some(w.with_letter(p, raised))
        }
    }
}

pub(crate) fn word_f_at(
    mode: ProductMode,
    base: &QuasiCrystal,
    pos: usize,
    w: &Word,
) -> Option<Word> {
    match sgn_at(mode, base, pos, w) {
        Signature::Zero => None,
        Signature::Reduced(r) => {
            let p = r.leftmost_plus?;
            let lowered = base
                .f_pos(pos, w.letters()[p])
                .expect("f defined on the letter originating a surviving plus");
            Some(w.with_letter(p, lowered))
        }
    }
}

/// `wt(w)`: the sum of the letter weights; `wt(ε) = 0`.
pub fn word_weight(base: &QuasiCrystal, w: &Word) -> Result<Weight> {
    check_word(base, w)?;
    let mut acc = Weight::zero(base.sys().rank());
    for &x in w.letters() {
        acc.add_assign(base.weight(x));
    }
    Ok(acc)
}

/// All words over `base` of length at most `max_len`, in shortlex order.
pub fn all_words(base: &QuasiCrystal, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * base.len());
        for w in &layer {
            for x in base.elements() {
                let mut letters = w.letters().to_vec();
                letters.push(x);
                next.push(Word::new(letters));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
