use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Krull dimension of `K[x_0..x_{n-1}] / I` from the leading monomials of a Groebner basis
/// of `I`: `n` minus the size of a smallest variable set meeting every leading monomial's
/// support. Returns `-1` when a leading monomial is constant (the unit ideal).
pub fn dimension_from_leading_monomials(nvars: usize, lms: &[Monomial]) -> Result<i64> {
    if nvars > 128 {
        return Err(Error::Unsupported("dimension computation supports at most 128 variables".into()));
    }
    let mut sets: Vec<u128> = Vec::with_capacity(lms.len());
    for m in lms {
        if m.is_one() {
            return Ok(-1);
        }
        sets.push(m.support().fold(0u128, |acc, i| acc | (1u128 << i)));
    }
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    let mut minimal: Vec<u128> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    let mut best = nvars as u32;
    min_cover(&minimal, 0, 0, &mut best);
    Ok(nvars as i64 - best as i64)
}

fn min_cover(sets: &[u128], chosen: u128, size: u32, best: &mut u32) {
    if size >= *best {
        return;
    }
    // Branch on the unhit set with the fewest variables.
    let unhit = sets.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
    let Some(&s) = unhit else {
        *best = size;
        return;
    };
    // Any cover needs at least one more variable; prune when that cannot improve.
    if size + 1 >= *best {
        return;
    }
    let mut rest = s;
    while rest != 0 {
        let v = rest & rest.wrapping_neg();
        rest &= rest - 1;
        min_cover(sets, chosen | v, size + 1, best);
    }
}
