//! Labeled relative root systems.
//!
//! Roots live in simple-root coordinates and are generated from the Cartan
//! matrix `A[i][j] = ⟨α_j, α̌_i⟩` of the relative system. Characters of the
//! torus live in fundamental-weight coordinates where coordinate `j`
//! measures `|t_j|` in the field of definition of `α_j`. With that
//! normalization the pairing of a character with the coroot of a relative
//! root `α` is taken in `F_α`:
//!
//! ```text
//! ⟨λ, α̌⟩ = Σ_j n_j · (d_j·deg_j)/(d_α·deg_α) · λ_j
//! ```
//!
//! where `n` are the root coordinates, `d` the symmetrizer (`d_α = (α,α)`)
//! and `deg` the field degrees. For split systems all degrees are 1 and this
//! is the usual expansion of `2α/(α,α)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::AffineForm;
use crate::error::{Error, Result};
use crate::rational::{det, qi, solve, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldLabel {
    pub symbol: String,
    pub degree: u32,
}

impl FieldLabel {
    #[allow(non_snake_case)]
    pub fn F() -> Self {
        FieldLabel {
            symbol: "F".into(),
            degree: 1,
        }
    }

    #[allow(non_snake_case)]
    pub fn K() -> Self {
        FieldLabel {
            symbol: "K".into(),
            degree: 2,
        }
    }

    #[allow(non_snake_case)]
    pub fn E() -> Self {
        FieldLabel {
            symbol: "E".into(),
            degree: 3,
        }
    }

    pub fn custom(symbol: &str, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput(format!(
                "field {symbol} must have positive degree"
            )));
        }
        if symbol == "F" && degree != 1 {
            return Err(Error::InvalidInput("the base field F has degree 1".into()));
        }
        Ok(FieldLabel {
            symbol: symbol.to_string(),
            degree,
        })
    }

    /// `F`, `K`, `E` by name; anything else needs an explicit degree.
    pub fn named(symbol: &str) -> Result<Self> {
        match symbol {
            "F" => Ok(Self::F()),
            "K" => Ok(Self::K()),
            "E" => Ok(Self::E()),
            other => Err(Error::InvalidInput(format!(
                "field label {other} needs an explicit degree"
            ))),
        }
    }

    pub fn is_base(&self) -> bool {
        self.degree == 1
    }
}

impl fmt::Display for FieldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

/// A root in simple-root coordinates: nonzero and sign-coherent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        let pos = coords.iter().all(|&c| c >= 0);
        let neg = coords.iter().all(|&c| c <= 0);
        if coords.iter().all(|&c| c == 0) || !(pos || neg) {
            return Err(Error::UnknownRoot(format!("{coords:?}")));
        }
        Ok(Root { coords })
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn negate(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    fn abs(&self) -> Root {
        if self.is_positive() {
            self.clone()
        } else {
            self.negate()
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Preset {
    SplitD4,
    QuasiD4,
    TriD4,
    G2,
    A1,
}

impl Preset {
    /// Accepts the CLI names (`D4`, `2D4`, `3D4`, `G2`, `A1`) and the long
    /// names (`split_D4`, `quasi_D4`, `tri_D4`).
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "D4" | "split_D4" => Ok(Preset::SplitD4),
            "2D4" | "quasi_D4" => Ok(Preset::QuasiD4),
            "3D4" | "tri_D4" => Ok(Preset::TriD4),
            "G2" => Ok(Preset::G2),
            "A1" => Ok(Preset::A1),
            other => Err(Error::UnsupportedGroup(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::SplitD4 => "D4",
            Preset::QuasiD4 => "2D4",
            Preset::TriD4 => "3D4",
            Preset::G2 => "G2",
            Preset::A1 => "A1",
        }
    }

    pub fn is_d4_form(self) -> bool {
        matches!(self, Preset::SplitD4 | Preset::QuasiD4 | Preset::TriD4)
    }
}

#[derive(Clone, Debug)]
pub struct RootInfo {
    pub root: Root,
    pub label: FieldLabel,
    pub length: LengthClass,
    /// Dimension of the root space over the base field. Carried for
    /// completeness; the zeta factors only see the label.
    pub multiplicity: u32,
    norm: Q,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    name: String,
    preset: Option<Preset>,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    simple_labels: Vec<FieldLabel>,
    positive: Vec<RootInfo>,
    index: HashMap<Vec<i64>, usize>,
}

/// Label entry of a custom system. Keys are either a 1-based simple
/// index (`"3"`) or comma-separated root coordinates (`"1,1,1"`).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CustomSystem {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default)]
    pub labels: BTreeMap<String, LabelSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelSpec {
    Named(String),
    Full { symbol: String, degree: u32 },
}

impl LabelSpec {
    fn resolve(&self) -> Result<FieldLabel> {
        match self {
            LabelSpec::Named(s) => FieldLabel::named(s),
            LabelSpec::Full { symbol, degree } => FieldLabel::custom(symbol, *degree),
        }
    }
}

fn d4_cartan() -> Vec<Vec<i64>> {
    vec![
        vec![2, -1, 0, 0],
        vec![-1, 2, -1, -1],
        vec![0, -1, 2, 0],
        vec![0, -1, 0, 2],
    ]
}

// B3 with α3 short.
fn b3_cartan() -> Vec<Vec<i64>> {
    vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
}

// G2 with α1 short.
fn g2_cartan() -> Vec<Vec<i64>> {
    vec![vec![2, -3], vec![-1, 2]]
}

impl RootSystem {
    pub fn preset(p: Preset) -> Self {
        let (cartan, short_label) = match p {
            Preset::SplitD4 => (d4_cartan(), FieldLabel::F()),
            Preset::QuasiD4 => (b3_cartan(), FieldLabel::K()),
            Preset::TriD4 => (g2_cartan(), FieldLabel::E()),
            Preset::G2 => (g2_cartan(), FieldLabel::F()),
            Preset::A1 => (vec![vec![2]], FieldLabel::F()),
        };
        let mut sys = Self::assemble(p.name(), cartan, |info| match info.length {
            LengthClass::Short => Some(short_label.clone()),
            LengthClass::Long => Some(FieldLabel::F()),
        })
        .expect("preset Cartan matrices are of finite type");
        sys.preset = Some(p);
        sys
    }

    pub fn custom(spec: &CustomSystem) -> Result<Self> {
        let cartan = spec.cartan.clone();
        validate_cartan(&cartan)?;
        let rank = cartan.len();
        let mut assigned: Vec<(Root, FieldLabel)> = Vec::new();
        for (key, label) in &spec.labels {
            let label = label.resolve()?;
            let root = if key.contains(',') {
                let coords = key
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse(format!("bad root key {key:?}")))?;
                if coords.len() != rank {
                    return Err(Error::UnknownRoot(key.clone()));
                }
                Root::new(coords)?.abs()
            } else {
                let i: usize = key
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad label key {key:?}")))?;
                if i == 0 || i > rank {
                    return Err(Error::UnknownRoot(key.clone()));
                }
                Root::simple(rank, i - 1)
            };
            assigned.push((root, label));
        }
        let probe = Self::assemble("custom", cartan.clone(), |_| None)?;
        for (root, _) in &assigned {
            if probe.index_of(root).is_none() {
                return Err(Error::UnknownRoot(root.to_string()));
            }
        }
        // Labels are constant on Weyl orbits: propagate each assignment to
        // its orbit and reject conflicts.
        let orbit = probe.orbit_ids();
        let mut orbit_label: HashMap<usize, FieldLabel> = HashMap::new();
        for (root, label) in &assigned {
            let o = orbit[probe.index_of(root).unwrap()];
            if let Some(prev) = orbit_label.get(&o) {
                if prev != label {
                    return Err(Error::LabelInconsistency(format!(
                        "root {root} is labeled {label} but its Weyl orbit carries {prev}"
                    )));
                }
            }
            orbit_label.insert(o, label.clone());
        }
        let labels: Vec<FieldLabel> = (0..probe.positive.len())
            .map(|k| {
                orbit_label
                    .get(&orbit[k])
                    .cloned()
                    .unwrap_or_else(FieldLabel::F)
            })
            .collect();
        let by_root: HashMap<Vec<i64>, FieldLabel> = probe
            .positive
            .iter()
            .zip(labels)
            .map(|(info, l)| (info.root.coords.clone(), l))
            .collect();
        Self::assemble("custom", cartan, |info| {
            by_root.get(&info.root.coords).cloned()
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CustomSystem =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::custom(&spec)
    }

    fn assemble(
        name: &str,
        cartan: Vec<Vec<i64>>,
        label_of: impl Fn(&RootInfo) -> Option<FieldLabel>,
    ) -> Result<Self> {
        validate_cartan(&cartan)?;
        let rank = cartan.len();
        let symmetrizer = symmetrizer(&cartan)?;
        let roots = generate_positive_roots(&cartan)?;
        let mut sys = RootSystem {
            name: name.to_string(),
            preset: None,
            cartan,
            symmetrizer,
            simple_labels: vec![FieldLabel::F(); rank],
            positive: Vec::new(),
            index: HashMap::new(),
        };
        let norms: Vec<Q> = roots.iter().map(|r| sys.norm(r)).collect();
        let mut long = vec![Q::zero(); rank];
        // Long = maximal norm within the connected component.
        let comp = components(&sys.cartan);
        for (r, n) in roots.iter().zip(&norms) {
            let c = comp[r.coords.iter().position(|&x| x != 0).unwrap()];
            for i in 0..rank {
                if comp[i] == c && *n > long[i] {
                    long[i] = n.clone();
                }
            }
        }
        for (r, n) in roots.into_iter().zip(norms) {
            let c = comp[r.coords.iter().position(|&x| x != 0).unwrap()];
            let i = (0..rank).find(|&i| comp[i] == c).unwrap();
            let length = if n == long[i] {
                LengthClass::Long
            } else {
                LengthClass::Short
            };
            let mut info = RootInfo {
                root: r,
                label: FieldLabel::F(),
                length,
                multiplicity: 1,
                norm: n,
            };
            info.label = label_of(&info).unwrap_or_else(FieldLabel::F);
            info.multiplicity = info.label.degree;
            sys.positive.push(info);
        }
        for (k, info) in sys.positive.iter().enumerate() {
            sys.index.insert(info.root.coords.clone(), k);
        }
        for i in 0..rank {
            let k = sys.index[&Root::simple(rank, i).coords];
            sys.simple_labels[i] = sys.positive[k].label.clone();
        }
        sys.check_label_orbits()?;
        Ok(sys)
    }

    fn orbit_ids(&self) -> Vec<usize> {
        let n = self.positive.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for k in 0..n {
            for i in 0..self.rank() {
                let img = self.reflect_unchecked(i, &self.positive[k].root).abs();
                let j = self.index[&img.coords];
                let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                parent[a] = b;
            }
        }
        (0..n).map(|k| find(&mut parent, k)).collect()
    }

    fn check_label_orbits(&self) -> Result<()> {
        for info in &self.positive {
            for i in 0..self.rank() {
                let img = self.reflect_unchecked(i, &info.root).abs();
                let other = &self.positive[self.index[&img.coords]];
                if other.label != info.label {
                    return Err(Error::LabelInconsistency(format!(
                        "{} ({}) and {} ({}) are Weyl-conjugate",
                        info.root, info.label, other.root, other.label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn preset_kind(&self) -> Option<Preset> {
        self.preset
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.positive.iter().map(|i| &i.root)
    }

    pub fn root_infos(&self) -> &[RootInfo] {
        &self.positive
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_label(&self, i: usize) -> &FieldLabel {
        &self.simple_labels[i]
    }

    fn degree(&self, i: usize) -> Q {
        qi(self.simple_labels[i].degree as i64)
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.index.get(&root.coords).copied()
    }

    fn info(&self, root: &Root) -> Result<&RootInfo> {
        if root.coords.len() != self.rank() {
            return Err(Error::UnknownRoot(root.to_string()));
        }
        self.index_of(&root.abs())
            .map(|k| &self.positive[k])
            .ok_or_else(|| Error::UnknownRoot(root.to_string()))
    }

    pub fn contains(&self, root: &Root) -> bool {
        self.info(root).is_ok()
    }

    pub fn label_of(&self, root: &Root) -> Result<&FieldLabel> {
        Ok(&self.info(root)?.label)
    }

    pub fn length_class_of(&self, root: &Root) -> Result<LengthClass> {
        Ok(self.info(root)?.length)
    }

    /// `(α, α)` for the symmetrized form with `(α_i, α_i) = d_i`.
    fn norm(&self, root: &Root) -> Q {
        let n = &root.coords;
        let mut acc = 0i64;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                acc += n[i] * n[j] * self.symmetrizer[i] * self.cartan[i][j];
            }
        }
        Q::new(acc.into(), 2.into())
    }

    /// Coroot of `root` in the simple-coroot basis, with the field-degree
    /// normalization described in the module docs.
    pub fn coroot(&self, root: &Root) -> Result<Vec<Q>> {
        let info = self.info(root)?;
        let scale = &info.norm * qi(info.label.degree as i64);
        Ok((0..self.rank())
            .map(|j| {
                let w = qi(self.symmetrizer[j]) * self.degree(j);
                qi(root.coords[j]) * w / &scale
            })
            .collect())
    }

    /// `⟨λ, α̌⟩` for a character given in fundamental-weight coordinates.
    pub fn pair(&self, lambda: &[AffineForm], root: &Root) -> Result<AffineForm> {
        let c = self.coroot(root)?;
        Ok(lambda
            .iter()
            .zip(&c)
            .fold(AffineForm::zero(), |acc, (l, cj)| &acc + &l.scale(cj)))
    }

    pub fn pair_q(&self, lambda: &[Q], root: &Root) -> Result<Q> {
        let c = self.coroot(root)?;
        Ok(lambda.iter().zip(&c).map(|(l, cj)| l * cj).sum())
    }

    /// `w_{α_i}(root) = root − ⟨root, α̌_i⟩ α_i`.
    pub fn reflect(&self, i: usize, root: &Root) -> Result<Root> {
        if i >= self.rank() {
            return Err(Error::InvalidInput(format!("no simple root {}", i + 1)));
        }
        self.info(root)?;
        Ok(self.reflect_unchecked(i, root))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, root: &Root) -> Root {
        let pairing: i64 = (0..self.rank())
            .map(|j| self.cartan[i][j] * root.coords[j])
            .sum();
        let mut coords = root.coords.clone();
        coords[i] -= pairing;
        Root { coords }
    }

    /// The character `|α|_{F_α}` of a root in fundamental-weight
    /// coordinates. For simple roots this is the column of the twisted
    /// Cartan matrix used by the Weyl action on characters.
    pub fn root_character(&self, root: &Root) -> Result<Vec<Q>> {
        let info = self.info(root)?;
        let deg = qi(info.label.degree as i64);
        let sign = if root.is_positive() {
            Q::one()
        } else {
            -Q::one()
        };
        let n = &info.root.coords;
        Ok((0..self.rank())
            .map(|k| {
                let s: i64 = (0..self.rank()).map(|i| self.cartan[k][i] * n[i]).sum();
                &sign * qi(s) * &deg / self.degree(k)
            })
            .collect())
    }

    pub fn simple_character(&self, i: usize) -> Vec<Q> {
        self.root_character(&Root::simple(self.rank(), i))
            .expect("simple roots are roots")
    }

    /// Coordinates of a character in the simple-root basis.
    pub fn to_root_coords(&self, lambda: &[Q]) -> Vec<Q> {
        let m: Vec<Vec<Q>> = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|&a| qi(a)).collect())
            .collect();
        let b: Vec<Q> = lambda
            .iter()
            .enumerate()
            .map(|(k, l)| l * self.degree(k))
            .collect();
        solve(&m, &b).expect("finite-type Cartan matrices are invertible")
    }
}

fn validate_cartan(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    let bad = |m: String| Err(Error::NotFiniteType(m));
    if n == 0 {
        return bad("empty Cartan matrix".into());
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return bad("Cartan matrix is not square".into());
        }
        if row[i] != 2 {
            return bad(format!("diagonal entry {} is not 2", i + 1));
        }
        for j in 0..n {
            if i != j {
                if row[j] > 0 {
                    return bad(format!(
                        "positive off-diagonal entry at ({},{})",
                        i + 1,
                        j + 1
                    ));
                }
                if (row[j] == 0) != (a[j][i] == 0) {
                    return bad(format!(
                        "zero pattern not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
    }
    let d = symmetrizer(a)?;
    let sym: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| qi(d[i] * a[i][j])).collect())
        .collect();
    for k in 1..=n {
        let minor: Vec<Vec<Q>> = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
        if !det(&minor).is_positive() {
            return bad("symmetrized Cartan matrix is not positive definite".into());
        }
    }
    Ok(())
}

fn components(a: &[Vec<i64>]) -> Vec<usize> {
    let n = a.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        comp[s] = next;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if a[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Positive integers `d_i` with `d_i A[i][j] = d_j A[j][i]`.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for s in 0..n {
        if d[s].is_some() {
            continue;
        }
        d[s] = Some(Q::one());
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = &di * qi(a[i][j]) / qi(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(prev) if *prev != dj => {
                        return Err(Error::NotFiniteType(
                            "Cartan matrix is not symmetrizable".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(Option::unwrap).collect();
    let lcm = d.iter().fold(num_bigint::BigInt::one(), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    });
    let ints: Vec<num_bigint::BigInt> = d
        .iter()
        .map(|x| (x * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| {
        num_integer::Integer::gcd(&acc, x)
    });
    ints.iter()
        .map(|x| {
            i64::try_from(x / &g).map_err(|_| Error::NotFiniteType("symmetrizer overflow".into()))
        })
        .collect()
}

const MAX_ROOTS: usize = 4096;

fn generate_positive_roots(a: &[Vec<i64>]) -> Result<Vec<Root>> {
    let n = a.len();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let r = Root::simple(n, i).coords;
        seen.insert(r.clone(), ());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let p: i64 = (0..n).map(|j| a[i][j] * r[j]).sum();
            let mut img = r.clone();
            img[i] -= p;
            if img.iter().all(|&c| c >= 0)
                && img.iter().any(|&c| c != 0)
                && !seen.contains_key(&img)
            {
                if seen.len() >= MAX_ROOTS {
                    return Err(Error::NotFiniteType("root system too large".into()));
                }
                seen.insert(img.clone(), ());
                queue.push_back(img);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_keys().map(|coords| Root { coords }).collect();
    // Height first, then descending lexicographic so α_1, α_2, ... lead.
    roots.sort_by(|x, y| {
        x.height()
            .cmp(&y.height())
            .then_with(|| y.coords.cmp(&x.coords))
    });
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn r(c: &[i64]) -> Root {
        Root::new(c.to_vec()).unwrap()
    }

    #[test]
    fn preset_sizes() {
        let sizes = [
            (Preset::SplitD4, 12),
            (Preset::QuasiD4, 9),
            (Preset::TriD4, 6),
            (Preset::G2, 6),
            (Preset::A1, 1),
        ];
        for (p, n) in sizes {
            assert_eq!(RootSystem::preset(p).num_positive_roots(), n, "{p:?}");
        }
    }

    #[test]
    fn quasi_split_roots_and_labels() {
        let sys = RootSystem::preset(Preset::QuasiD4);
        let roots: Vec<String> = sys.positive_roots().map(|r| r.to_string()).collect();
        assert_eq!(
            roots,
            [
                "(1,0,0)", "(0,1,0)", "(0,0,1)", "(1,1,0)", "(0,1,1)", "(1,1,1)", "(0,1,2)",
                "(1,1,2)", "(1,2,2)"
            ]
        );
        let k: Vec<String> = sys
            .root_infos()
            .iter()
            .filter(|i| i.label == FieldLabel::K())
            .map(|i| i.root.to_string())
            .collect();
        assert_eq!(k, ["(0,0,1)", "(0,1,1)", "(1,1,1)"]);
        assert_eq!(sys.simple_label(2), &FieldLabel::K());
    }

    #[test]
    fn split_d4_contains_the_listed_roots() {
        let sys = RootSystem::preset(Preset::SplitD4);
        for c in [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 1, 1, 1],
            [1, 2, 1, 1],
            [1, 1, 0, 0],
            [0, 1, 1, 0],
            [0, 1, 0, 1],
            [1, 1, 1, 0],
            [1, 1, 0, 1],
            [0, 1, 1, 1],
        ] {
            assert!(sys.contains(&r(&c)), "{c:?}");
        }
    }

    #[test]
    fn g2_roots() {
        let sys = RootSystem::preset(Preset::G2);
        let roots: Vec<String> = sys.positive_roots().map(|r| r.to_string()).collect();
        assert_eq!(
            roots,
            ["(1,0)", "(0,1)", "(1,1)", "(2,1)", "(3,1)", "(3,2)"]
        );
        assert_eq!(
            sys.length_class_of(&r(&[1, 0])).unwrap(),
            LengthClass::Short
        );
        assert_eq!(sys.length_class_of(&r(&[3, 2])).unwrap(), LengthClass::Long);
    }

    #[test]
    fn tri_d4_short_roots_are_cubic() {
        let sys = RootSystem::preset(Preset::TriD4);
        for info in sys.root_infos() {
            let want = match info.length {
                LengthClass::Short => FieldLabel::E(),
                LengthClass::Long => FieldLabel::F(),
            };
            assert_eq!(info.label, want);
        }
    }

    #[test]
    fn simple_coroot_is_basis_vector() {
        for p in [
            Preset::SplitD4,
            Preset::QuasiD4,
            Preset::TriD4,
            Preset::G2,
            Preset::A1,
        ] {
            let sys = RootSystem::preset(p);
            for i in 0..sys.rank() {
                let c = sys.coroot(&Root::simple(sys.rank(), i)).unwrap();
                for (j, cj) in c.iter().enumerate() {
                    assert_eq!(*cj, qi((i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn quasi_split_k_root_pairs_to_six_s() {
        let sys = RootSystem::preset(Preset::QuasiD4);
        let chi = vec![
            AffineForm::linear("s", qi(6), qi(2)),
            AffineForm::int(-1),
            AffineForm::int(-1),
        ];
        let c = sys.coroot(&r(&[1, 1, 1])).unwrap();
        assert_eq!(c, vec![qi(1), qi(1), qi(1)]);
        assert_eq!(
            sys.pair(&chi, &r(&[1, 1, 1])).unwrap(),
            AffineForm::linear("s", qi(6), qi(0))
        );
    }

    // Independent oracle: expand 2α/(α,α) in the simple coroots
    // α̌_j = 2α_j/(α_j,α_j) using an explicit Euclidean realization of G2.
    #[test]
    fn g2_highest_coroot_matches_euclidean_expansion() {
        // α = (1, 0), β = (-3/2, √3/2); work with squared lengths and inner
        // products only: (α,α) = 1, (β,β) = 3, (α,β) = -3/2.
        let gram = [[q(1, 1), q(-3, 2)], [q(-3, 2), q(3, 1)]];
        let n = [qi(3), qi(2)];
        let mut norm = Q::zero();
        for i in 0..2 {
            for j in 0..2 {
                norm += &n[i] * &n[j] * &gram[i][j];
            }
        }
        let want: Vec<Q> = (0..2).map(|j| &n[j] * &gram[j][j] / &norm).collect();
        let sys = RootSystem::preset(Preset::G2);
        assert_eq!(sys.coroot(&r(&[3, 2])).unwrap(), want);
        assert_eq!(want, vec![qi(1), qi(2)]);
    }

    #[test]
    fn reflections() {
        let sys = RootSystem::preset(Preset::QuasiD4);
        assert_eq!(sys.reflect(0, &r(&[1, 0, 0])).unwrap(), r(&[-1, 0, 0]));
        assert_eq!(sys.reflect(1, &r(&[1, 0, 0])).unwrap(), r(&[1, 1, 0]));
        let g2 = RootSystem::preset(Preset::G2);
        assert_eq!(g2.reflect(0, &r(&[0, 1])).unwrap(), r(&[3, 1]));
        assert!(matches!(
            sys.reflect(0, &r(&[1, 2, 1])),
            Err(Error::UnknownRoot(_))
        ));
    }

    #[test]
    fn coroot_rejects_foreign_root() {
        let sys = RootSystem::preset(Preset::QuasiD4);
        assert!(matches!(
            sys.coroot(&r(&[1, 2, 1])),
            Err(Error::UnknownRoot(_))
        ));
        assert!(matches!(
            sys.coroot(&r(&[1, 1])),
            Err(Error::UnknownRoot(_))
        ));
    }

    #[test]
    fn simple_reflections_permute_roots() {
        for p in [Preset::SplitD4, Preset::QuasiD4, Preset::TriD4, Preset::G2] {
            let sys = RootSystem::preset(p);
            for i in 0..sys.rank() {
                let simple = Root::simple(sys.rank(), i);
                let mut images: Vec<Root> = Vec::new();
                for root in sys.positive_roots() {
                    let img = sys.reflect(i, root).unwrap();
                    if *root == simple {
                        assert_eq!(img, simple.negate());
                    } else {
                        assert!(img.is_positive() && sys.contains(&img));
                        images.push(img);
                    }
                }
                images.sort();
                images.dedup();
                assert_eq!(images.len(), sys.num_positive_roots() - 1);
            }
        }
    }

    #[test]
    fn coroot_duality() {
        for p in [
            Preset::SplitD4,
            Preset::QuasiD4,
            Preset::TriD4,
            Preset::G2,
            Preset::A1,
        ] {
            let sys = RootSystem::preset(p);
            for root in sys.positive_roots() {
                let chi = sys.root_character(root).unwrap();
                assert_eq!(sys.pair_q(&chi, root).unwrap(), qi(2), "{p:?} {root}");
            }
        }
    }

    #[test]
    fn custom_systems() {
        let spec = r#"{"cartan": [[2,-1,0],[-1,2,-1],[0,-2,2]], "labels": {"3": "K"}}"#;
        let sys = RootSystem::from_json(spec).unwrap();
        let k = sys
            .root_infos()
            .iter()
            .filter(|i| i.label == FieldLabel::K())
            .count();
        assert_eq!(k, 3);

        let clash = r#"{"cartan": [[2,-1],[-1,2]], "labels": {"1": "F", "2": "K"}}"#;
        assert!(matches!(
            RootSystem::from_json(clash),
            Err(Error::LabelInconsistency(_))
        ));

        let affine = r#"{"cartan": [[2,-2],[-2,2]]}"#;
        assert!(matches!(
            RootSystem::from_json(affine),
            Err(Error::NotFiniteType(_))
        ));
        let positive = r#"{"cartan": [[2,1],[1,2]]}"#;
        assert!(matches!(
            RootSystem::from_json(positive),
            Err(Error::NotFiniteType(_))
        ));

        let custom_field = r#"{"cartan": [[2]], "labels": {"1": {"symbol": "L", "degree": 4}}}"#;
        let sys = RootSystem::from_json(custom_field).unwrap();
        assert_eq!(sys.simple_label(0).degree, 4);
    }
}
