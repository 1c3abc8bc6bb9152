//! Commensurability of rectangular cusp shapes with moduli i·t and i·t'.

use super::quadext::QuadExt;
use super::LorentzError;

/// i·t and i·t' are related by a rational Möbius map iff t'/t or t·t' is rational.
///
/// Writing i t' (r i t + s) = p i t + q and comparing parts gives q = −r t t'
/// and s t' = p t. If r ≠ 0 then t t' ∈ Q; otherwise q = 0 and t'/t = p/s.
pub fn cusp_commensurable(t: &QuadExt, t_prime: &QuadExt) -> Result<bool, LorentzError> {
    if !t.compatible(t_prime) {
        return Err(LorentzError::FieldMismatch(t.radicand(), t_prime.radicand()));
    }
    if !t.is_positive() || !t_prime.is_positive() {
        return Err(LorentzError::BadSpec("moduli must be positive".into()));
    }
    if t.square_is_rational() {
        return Err(LorentzError::RationalSquare);
    }
    Ok((t_prime / t).is_rational() || (t * t_prime).is_rational())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3(a: i64, b: i64) -> QuadExt {
        QuadExt::from_parts(a, 1, b, 1, 3)
    }

    #[test]
    fn cusp_shape_values() {
        assert!(cusp_commensurable(&r3(2, 1), &r3(2, 1)).unwrap());
        assert!(!cusp_commensurable(&r3(1, 1), &r3(2, 1)).unwrap());
        assert!(cusp_commensurable(&r3(1, 1), &r3(2, 2)).unwrap());
        assert_eq!(cusp_commensurable(&QuadExt::int(2), &r3(1, 1)), Err(LorentzError::RationalSquare));
    }

    /// Brute expansion: search integer (p, q, r, s) with ps − qr ≠ 0 solving
    /// −r t t' = q and s t' = p t exactly, and compare with the criterion.
    #[test]
    fn criterion_matches_brute_search() {
        let samples = [r3(1, 1), r3(2, 1), r3(2, 2), r3(-1, 1), r3(2, -1)];
        for t in &samples {
            for tp in &samples {
                let crit = cusp_commensurable(t, tp).unwrap();
                let tt = t * tp;
                let mut found = false;
                for p in -4i64..=4 {
                    for q in -4i64..=4 {
                        for r in -4i64..=4 {
                            for s in -4i64..=4 {
                                if p * s == q * r {
                                    continue;
                                }
                                let real = &(&QuadExt::int(-r) * &tt) - &QuadExt::int(q);
                                let imag = &(&QuadExt::int(s) * tp) - &(&QuadExt::int(p) * t);
                                found |= real.is_zero() && imag.is_zero();
                            }
                        }
                    }
                }
                assert_eq!(crit, found, "t={t} t'={tp}");
            }
        }
    }
}
