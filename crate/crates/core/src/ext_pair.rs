use core::fmt;

/// Value domain of `σ`: `{⊥} ∪ ℕ²` with `⊥` below every pair and pairs
/// compared lexicographically.
///
/// `⊥` stands for `(−∞, −∞)`. The derived `Ord` relies on the variant
/// order, so `Bottom` must stay first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum ExtPair {
    #[default]
    Bottom,
    Pair(u64, u64),
}

impl ExtPair {
    pub fn is_bottom(self) -> bool {
        matches!(self, ExtPair::Bottom)
    }

    pub fn pair(self) -> Option<(u64, u64)> {
        match self {
            ExtPair::Bottom => None,
            ExtPair::Pair(p, q) => Some((p, q)),
        }
    }
}

impl fmt::Display for ExtPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPair::Bottom => f.write_str("-inf"),
            ExtPair::Pair(p, q) => write!(f, "({p},{q})"),
        }
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::ExtPair;
    use core::fmt;
    use serde::de::{self, SeqAccess, Visitor};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    // Bottom is the literal string "-inf"; pairs are two-element arrays.
    impl Serialize for ExtPair {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            match *self {
                ExtPair::Bottom => serializer.serialize_str("-inf"),
                ExtPair::Pair(p, q) => {
                    let mut seq = serializer.serialize_seq(Some(2))?;
                    seq.serialize_element(&p)?;
                    seq.serialize_element(&q)?;
                    seq.end()
                }
            }
        }
    }

    struct ExtPairVisitor;

    impl<'de> Visitor<'de> for ExtPairVisitor {
        type Value = ExtPair;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("\"-inf\" or a two-element array of naturals")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtPair, E> {
            if v == "-inf" {
                Ok(ExtPair::Bottom)
            } else {
                Err(E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<ExtPair, A::Error> {
            let p = seq
                .next_element()?
                .ok_or_else(|| de::Error::invalid_length(0, &self))?;
            let q = seq
                .next_element()?
                .ok_or_else(|| de::Error::invalid_length(1, &self))?;
            if seq.next_element::<de::IgnoredAny>()?.is_some() {
                return Err(de::Error::invalid_length(3, &self));
            }
            Ok(ExtPair::Pair(p, q))
        }
    }

    impl<'de> Deserialize<'de> for ExtPair {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<ExtPair, D::Error> {
            deserializer.deserialize_any(ExtPairVisitor)
        }
    }
}
