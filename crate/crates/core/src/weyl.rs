//! Weyl words, reduced forms and coset representatives.
//!
//! An element `w` is identified by the regular vector `w·ρ` written in
//! fundamental-weight coordinates of the root datum (not of the relative
//! characters, which carry field-degree weights). `w` has left descent `i`
//! exactly when the `i`-th coordinate of `w·ρ` is negative, which gives
//! reduced words greedily.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::root_datum::{Root, RootSystem};

const MAX_ORDER: usize = 200_000;

/// A word `w_{i1}···w_{ik}` in the simple reflections, stored 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord::default()
    }

    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    /// Builds a word from the 1-based labels used in printed tables.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::InvalidInput("Weyl letters are 1-based".into()));
        }
        Ok(WeylWord {
            letters: labels.iter().map(|l| l - 1).collect(),
        })
    }

    /// Parses `e`, `w[2342]`, `2342` or `2,3,4,2`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "e" || t == "w[]" || t.is_empty() {
            return Ok(Self::identity());
        }
        let inner = t
            .strip_prefix("w[")
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(t);
        let labels: Vec<usize> = if inner.contains(',') {
            inner
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad Weyl word {text:?}")))?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(format!("bad Weyl word {text:?}")))?
        };
        Self::from_labels(&labels)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        WeylWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// The product `self · other`.
    pub fn concat(&self, other: &WeylWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }

    pub fn prepend(&self, i: usize) -> Self {
        WeylWord::new(vec![i]).concat(self)
    }

    pub fn validate(&self, sys: &RootSystem) -> Result<()> {
        match self.letters.iter().find(|&&i| i >= sys.rank()) {
            Some(i) => Err(Error::InvalidInput(format!(
                "letter {} exceeds rank {}",
                i + 1,
                sys.rank()
            ))),
            None => Ok(()),
        }
    }

    /// Lexicographically smallest reduced word for the same element.
    pub fn reduce(&self, sys: &RootSystem) -> Result<Self> {
        self.validate(sys)?;
        Ok(canonical_word(sys, rho_image(sys, self)))
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let wide = self.letters.iter().any(|&i| i >= 9);
        let parts: Vec<String> = self.letters.iter().map(|i| (i + 1).to_string()).collect();
        let sep = if wide { "," } else { "" };
        write!(f, "w[{}]", parts.join(sep))
    }
}

fn reflect_rho(sys: &RootSystem, v: &mut [i64], i: usize) {
    let vi = v[i];
    for (k, vk) in v.iter_mut().enumerate() {
        *vk -= vi * sys.cartan()[k][i];
    }
}

/// `w·ρ`, letters applied right to left.
fn rho_image(sys: &RootSystem, w: &WeylWord) -> Vec<i64> {
    let mut v = vec![1i64; sys.rank()];
    for &i in w.letters.iter().rev() {
        reflect_rho(sys, &mut v, i);
    }
    v
}

fn canonical_word(sys: &RootSystem, mut v: Vec<i64>) -> WeylWord {
    let mut letters = Vec::new();
    while let Some(i) = (0..sys.rank()).find(|&i| v[i] < 0) {
        letters.push(i);
        reflect_rho(sys, &mut v, i);
    }
    WeylWord { letters }
}

pub fn length(sys: &RootSystem, w: &WeylWord) -> Result<usize> {
    Ok(w.reduce(sys)?.len())
}

/// Every element of `W` as its canonical reduced word, ordered by length
/// and then lexicographically.
pub fn elements(sys: &RootSystem) -> Result<Vec<WeylWord>> {
    let start = vec![1i64; sys.rank()];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for i in 0..sys.rank() {
            let mut u = v.clone();
            reflect_rho(sys, &mut u, i);
            if seen.insert(u.clone()) {
                if seen.len() > MAX_ORDER {
                    return Err(Error::InvalidInput(
                        "Weyl group too large to enumerate".into(),
                    ));
                }
                queue.push_back(u);
            }
        }
    }
    let mut words: Vec<WeylWord> = seen.into_iter().map(|v| canonical_word(sys, v)).collect();
    words.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.letters.cmp(&b.letters))
    });
    Ok(words)
}

/// Shortest representatives `w` with `w⁻¹α_i > 0` for every `i` in the Levi.
pub fn coset_reps(sys: &RootSystem, levi: &[usize]) -> Result<Vec<WeylWord>> {
    if let Some(i) = levi.iter().find(|&&i| i >= sys.rank()) {
        return Err(Error::InvalidInput(format!(
            "Levi index {} out of range",
            i + 1
        )));
    }
    Ok(elements(sys)?
        .into_iter()
        .filter(|w| {
            let v = rho_image(sys, w);
            levi.iter().all(|&i| v[i] > 0)
        })
        .collect())
}

/// `w(α)`, letters applied right to left.
pub fn act_on_root(sys: &RootSystem, w: &WeylWord, root: &Root) -> Result<Root> {
    w.validate(sys)?;
    sys.coroot(root)?;
    Ok(w.letters
        .iter()
        .rev()
        .fold(root.clone(), |r, &i| sys.reflect_unchecked(i, &r)))
}

/// `w⁻¹(α)`.
pub fn act_inverse_on_root(sys: &RootSystem, w: &WeylWord, root: &Root) -> Result<Root> {
    act_on_root(sys, &w.inverse(), root)
}

/// Positive roots made negative by `w⁻¹`, in canonical root order.
pub fn inversion_set(sys: &RootSystem, w: &WeylWord) -> Result<Vec<Root>> {
    w.validate(sys)?;
    let mut out = Vec::new();
    for root in sys.positive_roots() {
        if !act_inverse_on_root(sys, w, root)?.is_positive() {
            out.push(root.clone());
        }
    }
    Ok(out)
}
