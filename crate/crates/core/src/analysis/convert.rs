use crate::error::{Error, Result};
use crate::numeration::{evaluate, represent, DigitWord};
use crate::rhythm::Rhythm;

/// Rewrites `w`, a word over any digits, as the canonical representation of
/// its value in base `p'/q'`, the reduced growth ratio of `r`.
///
/// The value must be a natural number; this holds for every branch word of
/// the special labelling of `r`.
pub fn convert(r: &Rhythm, w: &DigitWord) -> Result<DigitWord> {
    let base = r.growth();
    let value = evaluate(&base, w);
    match value.to_natural() {
        Some(n) => Ok(represent(&base, n)),
        None => Err(Error::NotANaturalValue {
            word: w.to_string(),
            value: value.to_string(),
        }),
    }
}
