use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Binary subscription decision per user.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubscriptionProfile {
    actions: Vec<bool>,
}

impl SubscriptionProfile {
    pub fn new(actions: Vec<bool>) -> Self {
        Self { actions }
    }

    pub fn none(n: usize) -> Self {
        Self::new(vec![false; n])
    }

    pub fn all(n: usize) -> Self {
        Self::new(vec![true; n])
    }

    pub fn from_subscribers(n: usize, subscribers: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::none(n);
        for i in subscribers {
            p.actions[i] = true;
        }
        p
    }

    /// Parses a bit string such as `10001`.
    pub fn parse(bits: &str) -> Option<Self> {
        bits.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    /// `index`-th profile of `n` users in lexicographic order, `a_0` most
    /// significant.
    pub fn from_index(n: usize, index: u64) -> Self {
        Self::new((0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn actions(&self) -> &[bool] {
        &self.actions
    }

    pub fn subscribes(&self, node: usize) -> bool {
        self.actions[node]
    }

    pub fn subscriber_count(&self) -> usize {
        self.actions.iter().filter(|&&a| a).count()
    }

    /// Fraction of users that subscribe.
    pub fn fraction(&self) -> f64 {
        self.subscriber_count() as f64 / self.len() as f64
    }

    /// Copy with `node`'s action flipped, others unchanged.
    pub fn flipped(&self, node: usize) -> Self {
        let mut p = self.clone();
        p.actions[node] = !p.actions[node];
        p
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.len(),
            })
        }
    }
}

impl fmt::Display for SubscriptionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.actions {
            f.write_str(if a { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for SubscriptionProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_order_is_lexicographic() {
        let profiles: Vec<_> = (0..8)
            .map(|i| SubscriptionProfile::from_index(3, i))
            .collect();
        assert_eq!(profiles[1].to_string(), "001");
        assert_eq!(profiles[4].to_string(), "100");
        assert!(profiles.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parse_and_flip() {
        let p = SubscriptionProfile::parse("10010").unwrap();
        assert_eq!(p.subscriber_count(), 2);
        assert_eq!(p.fraction(), 0.4);
        assert_eq!(p.flipped(1).to_string(), "11010");
        assert!(SubscriptionProfile::parse("10a").is_none());
        assert!(p.check_len(4).is_err());
    }
}
