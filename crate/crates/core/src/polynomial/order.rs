use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Monomial;

/// Monomial orders with variable precedence `y_1 > .. > y_n > x_1 > .. > x_n`.
///
/// `YGradedLex` compares total y-degree first and breaks ties lexicographically,
/// so any monomial of larger y-degree is larger. `PureLex` is plain
/// lexicographic order with the same precedence; it does *not* have that
/// property (`y_1 > y_2 y_3`) and is kept for informational runs only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum YHeavyOrder {
    #[default]
    YGradedLex,
    PureLex,
}

impl YHeavyOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.ambient(), b.ambient(), "ambient size mismatch");
        if let YHeavyOrder::YGradedLex = self {
            match a.y_degree().cmp(&b.y_degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        a.y_exponents()
            .cmp(b.y_exponents())
            .then_with(|| a.x_exponents().cmp(b.x_exponents()))
    }

    /// Whether larger total y-degree always means a larger monomial.
    pub fn is_y_heavy(&self) -> bool {
        matches!(self, YHeavyOrder::YGradedLex)
    }

    /// A vector whose lexicographic order agrees with `compare`.
    pub(crate) fn key(&self, m: &Monomial) -> Vec<u32> {
        let mut key = Vec::with_capacity(m.raw().len() + 1);
        if let YHeavyOrder::YGradedLex = self {
            key.push(m.y_degree());
        }
        key.extend_from_slice(m.y_exponents());
        key.extend_from_slice(m.x_exponents());
        key
    }

    pub(crate) fn monomial_from_key(&self, key: &[u32]) -> Monomial {
        let body = match self {
            YHeavyOrder::YGradedLex => &key[1..],
            YHeavyOrder::PureLex => key,
        };
        let n = body.len() / 2;
        Monomial::from_exponents(&body[n..], &body[..n])
    }
}

impl fmt::Display for YHeavyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YHeavyOrder::YGradedLex => write!(f, "ygradedlex"),
            YHeavyOrder::PureLex => write!(f, "purelex"),
        }
    }
}

impl FromStr for YHeavyOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "ygradedlex" => Ok(YHeavyOrder::YGradedLex),
            "purelex" | "lex" => Ok(YHeavyOrder::PureLex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}
