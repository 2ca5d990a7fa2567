//! The compact group grammar: `+`-separated cyclic orders, each optionally
//! carrying a `^` repetition count, so `"2^3+4"` names Z/2 ⊕ Z/2 ⊕ Z/2 ⊕ Z/4.
//! Parsing canonicalizes: the result is in invariant-factor form, whatever
//! order and grouping the expression used.

use num_bigint::BigInt;
use trinity::zlinalg::{group_from_cyclic_orders, AbelianGroup};

use crate::CliError;

/// Hard bound on `^` repetition counts, so a typo cannot ask for an
/// absurdly long direct sum.
const MAX_REPEAT: u32 = 4096;

/// Parses a group expression into a canonical-form group.
pub fn parse_group_expression(text: &str) -> Result<AbelianGroup, CliError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(CliError::input("empty group expression"));
    }
    let mut orders: Vec<BigInt> = Vec::new();
    for part in trimmed.split('+') {
        let part = part.trim();
        let (base, count) = match part.split_once('^') {
            Some((base, exponent)) => {
                let count: u32 = exponent.trim().parse().map_err(|_| {
                    CliError::input(format!("bad repetition count in {part:?}"))
                })?;
                (base.trim(), count)
            }
            None => (part, 1),
        };
        let order: u64 = base
            .parse()
            .map_err(|_| CliError::input(format!("bad cyclic order in {part:?}")))?;
        if order == 0 {
            return Err(CliError::input(format!(
                "cyclic order in {part:?} must be at least 1"
            )));
        }
        if count > MAX_REPEAT {
            return Err(CliError::input(format!(
                "repetition count in {part:?} exceeds the {MAX_REPEAT} bound"
            )));
        }
        orders.extend(std::iter::repeat_n(BigInt::from(order), count as usize));
    }
    group_from_cyclic_orders(orders)
        .map_err(|e| CliError::input(format!("invalid group expression: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(text: &str) -> Vec<u64> {
        parse_group_expression(text)
            .expect("expression parses")
            .invariant_factors()
            .iter()
            .map(|d| u64::try_from(d).expect("small factor"))
            .collect()
    }

    #[test]
    fn plain_sums_parse() {
        assert_eq!(factors("4+4"), vec![4, 4]);
        assert_eq!(factors(" 2 + 6 "), vec![2, 6]);
    }

    #[test]
    fn repetition_expands_and_canonicalizes() {
        assert_eq!(factors("2^3+4"), vec![2, 2, 2, 4]);
        assert_eq!(factors("6+4"), vec![2, 12]);
        assert_eq!(factors("3+2"), vec![6]);
        assert_eq!(factors("2^0+5"), vec![5]);
    }

    #[test]
    fn ones_vanish() {
        let group = parse_group_expression("1").expect("trivial group parses");
        assert!(group.is_trivial());
    }

    #[test]
    fn malformed_expressions_are_rejected() {
        for bad in ["", "abc", "4+", "^2", "2^", "0", "2^9999999", "-3"] {
            assert!(
                parse_group_expression(bad).is_err(),
                "{bad:?} should not parse"
            );
        }
    }
}
