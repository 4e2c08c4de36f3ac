//! Instance files.
//!
//! ```toml
//! format_version = 1
//! toric = true
//! supports = ["x", "y"]
//! nerve = "full"            # or [["x", "y"], ["z"]]
//!
//! [[divisors]]
//! x = 2
//!
//! [[divisors]]
//! y = 1
//! ```
//!
//! Omitted coefficients are 0. `toric = true` declares the coordinate
//! hyperplanes `x_i = 0` and requires `nerve = "full"`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use principalize_core::{Arrangement, BlowupState, Divisor, DivisorLabel, Nerve};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::InputError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NerveSpec {
    Full,
    /// Maximal nonempty intersections, by support name.
    Maximal(Vec<Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub toric: bool,
    pub supports: Vec<String>,
    pub nerve: NerveSpec,
    /// Dense coefficient vectors, one entry per support.
    pub divisors: Vec<Vec<u64>>,
}

type RawDivisor = Spanned<BTreeMap<Spanned<String>, Spanned<i64>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    format_version: Spanned<i64>,
    toric: Option<Spanned<bool>>,
    supports: Spanned<Vec<Spanned<String>>>,
    nerve: Spanned<RawNerve>,
    divisors: Option<Spanned<Vec<RawDivisor>>>,
}

enum RawNerve {
    Full,
    Sets(Vec<Spanned<Vec<Spanned<String>>>>),
}

impl<'de> Deserialize<'de> for RawNerve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RawNerve;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"full\" or a list of lists of support names")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<RawNerve, E> {
                if s == "full" {
                    Ok(RawNerve::Full)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(s), &self))
                }
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<RawNerve, A::Error> {
                let mut sets = Vec::new();
                while let Some(set) = seq.next_element()? {
                    sets.push(set);
                }
                Ok(RawNerve::Sets(sets))
            }
        }
        d.deserialize_any(V)
    }
}

/// 1-based line and column of a byte offset.
pub(crate) fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.len(), |nl| before.len() - nl - 1)
        + 1;
    (line, column)
}

fn at<T>(text: &str, spanned: &Spanned<T>, message: impl Into<String>) -> InputError {
    let (line, column) = position(text, spanned.span().start);
    InputError::At {
        line,
        column,
        message: message.into(),
    }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance, InputError> {
        let raw: RawInstance = toml::from_str(text).map_err(|e| match e.span() {
            Some(span) => {
                let (line, column) = position(text, span.start);
                InputError::At {
                    line,
                    column,
                    message: e.message().trim().to_string(),
                }
            }
            None => InputError::Invalid(e.message().trim().to_string()),
        })?;

        if *raw.format_version.get_ref() != i64::from(FORMAT_VERSION) {
            return Err(at(
                text,
                &raw.format_version,
                format!(
                    "unsupported format_version {}, expected {FORMAT_VERSION}",
                    raw.format_version.get_ref()
                ),
            ));
        }

        let mut index = HashMap::new();
        let mut supports = Vec::new();
        for name in raw.supports.get_ref() {
            if name.get_ref().is_empty() {
                return Err(at(text, name, "support names must be nonempty"));
            }
            if index
                .insert(name.get_ref().clone(), supports.len())
                .is_some()
            {
                return Err(at(
                    text,
                    name,
                    format!("duplicate support name {:?}", name.get_ref()),
                ));
            }
            supports.push(name.get_ref().clone());
        }
        if supports.is_empty() {
            return Err(at(text, &raw.supports, "at least one support is required"));
        }
        let lookup = |name: &Spanned<String>| {
            index
                .get(name.get_ref())
                .copied()
                .ok_or_else(|| at(text, name, format!("unknown support {:?}", name.get_ref())))
        };

        let nerve = match raw.nerve.get_ref() {
            RawNerve::Full => NerveSpec::Full,
            RawNerve::Sets(sets) => {
                let mut seen = vec![false; supports.len()];
                let mut out = Vec::with_capacity(sets.len());
                for set in sets {
                    let mut names = Vec::with_capacity(set.get_ref().len());
                    for name in set.get_ref() {
                        seen[lookup(name)?] = true;
                        names.push(name.get_ref().clone());
                    }
                    out.push(names);
                }
                if let Some(v) = seen.iter().position(|s| !s) {
                    return Err(at(
                        text,
                        &raw.nerve,
                        format!("support {:?} appears in no nerve set", supports[v]),
                    ));
                }
                NerveSpec::Maximal(out)
            }
        };
        let toric = raw.toric.as_ref().is_some_and(|t| *t.get_ref());
        if toric && nerve != NerveSpec::Full {
            let flag = raw.toric.as_ref().expect("toric is set");
            return Err(at(text, flag, "a toric instance needs nerve = \"full\""));
        }

        let Some(tables) = raw.divisors else {
            return Err(InputError::Invalid("missing [[divisors]]".into()));
        };
        let mut divisors = Vec::new();
        for table in tables.get_ref() {
            let mut coeffs = vec![0u64; supports.len()];
            for (name, value) in table.get_ref() {
                let v = lookup(name)?;
                coeffs[v] = u64::try_from(*value.get_ref()).map_err(|_| {
                    at(
                        text,
                        value,
                        format!("coefficient of {:?} must be nonnegative", name.get_ref()),
                    )
                })?;
            }
            divisors.push(coeffs);
        }
        if divisors.len() < 2 {
            return Err(at(
                text,
                &tables,
                format!("at least 2 divisors are required, found {}", divisors.len()),
            ));
        }

        Ok(Instance {
            toric,
            supports,
            nerve,
            divisors,
        })
    }

    pub fn to_toml(&self) -> String {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum NerveOut<'a> {
            Keyword(&'a str),
            Sets(&'a [Vec<String>]),
        }
        #[derive(Serialize)]
        struct Out<'a> {
            format_version: u32,
            toric: bool,
            supports: &'a [String],
            nerve: NerveOut<'a>,
            divisors: Vec<BTreeMap<&'a str, u64>>,
        }
        let out = Out {
            format_version: FORMAT_VERSION,
            toric: self.toric,
            supports: &self.supports,
            nerve: match &self.nerve {
                NerveSpec::Full => NerveOut::Keyword("full"),
                NerveSpec::Maximal(sets) => NerveOut::Sets(sets),
            },
            divisors: self
                .divisors
                .iter()
                .map(|row| {
                    self.supports
                        .iter()
                        .zip(row)
                        .filter(|(_, &c)| c != 0)
                        .map(|(name, &c)| (name.as_str(), c))
                        .collect()
                })
                .collect(),
        };
        toml::to_string(&out).expect("instance serializes")
    }

    /// Divisor rows as the chart oracle expects them.
    pub fn coeff_matrix(&self) -> &[Vec<u64>] {
        &self.divisors
    }

    pub fn nerve(&self) -> Nerve {
        let n = self.supports.len();
        match &self.nerve {
            NerveSpec::Full => Nerve::full(n),
            NerveSpec::Maximal(sets) => {
                let sets = sets.iter().map(|set| {
                    set.iter()
                        .map(|name| {
                            self.supports
                                .iter()
                                .position(|s| s == name)
                                .expect("validated name")
                        })
                        .collect::<Vec<_>>()
                });
                Nerve::from_maximal(n, sets).expect("validated indices")
            }
        }
    }

    pub fn to_state(&self) -> Result<BlowupState, InputError> {
        let labels = self
            .supports
            .iter()
            .enumerate()
            .map(|(i, name)| DivisorLabel::original(i, name.clone()))
            .collect();
        let arrangement = Arrangement::new(labels, self.nerve())
            .map_err(|e| InputError::Invalid(e.to_string()))?;
        let state = BlowupState::new(
            arrangement,
            self.divisors.iter().cloned().map(Divisor::new).collect(),
        );
        state
            .validate()
            .map_err(|e| InputError::Invalid(e.to_string()))?;
        Ok(state)
    }
}
