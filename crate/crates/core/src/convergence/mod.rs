//! Ideals on index sets, nets, level sets, and the four convergence notions:
//! ideal lim-inf (IS), generalized ideal lim-inf (GIS), topological ideal
//! convergence, and the generalized ideal eventual-lower-bound limit (GI).

mod derive;
mod finite;
mod omega;
mod symbolic;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::ElemSet;
use crate::dcpo::Dcpo;
use crate::error::{Error, Result};
use crate::example_one::NatSet;
use crate::poset::{FinitePoset, PosetSpec};
use crate::waybelow::Approximation;

pub use derive::{
    derive_convergence_topology, directed_index_posets, net_class, Mode, NetClassConfig,
};
pub use omega::OmegaSet;

/// The index dcpo `J` of a net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexDcpo {
    /// A finite poset with a greatest element.
    Finite(Arc<FinitePoset>),
    /// The naturals in their usual order.
    Omega,
}

impl IndexDcpo {
    pub fn finite(p: FinitePoset) -> Result<Self> {
        if p.is_empty() || p.greatest(p.full()).is_none() {
            return Err(Error::NotDirected);
        }
        Ok(IndexDcpo::Finite(Arc::new(p)))
    }

    pub fn render(&self, s: &IndexSet) -> String {
        match (self, s) {
            (IndexDcpo::Finite(p), IndexSet::Finite(m)) => {
                format!("{{{}}}", p.ids_of(*m).join(", "))
            }
            (_, IndexSet::Finite(m)) => format!("{m:?}"),
            (_, IndexSet::Omega(o)) => o.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Finite(ElemSet),
    Omega(OmegaSet),
}

impl IndexSet {
    pub fn is_empty(&self) -> bool {
        match self {
            IndexSet::Finite(m) => m.is_empty(),
            IndexSet::Omega(o) => o.is_empty(),
        }
    }

    fn same_shape(&self, index: &IndexDcpo) -> bool {
        match (self, index) {
            (IndexSet::Finite(m), IndexDcpo::Finite(p)) => m.is_subset(p.full()),
            (IndexSet::Omega(_), IndexDcpo::Omega) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdealKind {
    /// Sets avoiding some residual set `{j' : j ≤ j'}`.
    #[serde(rename = "eventual")]
    Eventual,
    #[serde(rename = "finite")]
    FiniteSets,
    #[serde(rename = "density0")]
    DensityZero,
    /// Every subset of `J`.
    #[serde(rename = "trivial")]
    TrivialAll,
}

impl IdealKind {
    pub const ALL: [IdealKind; 4] = [
        IdealKind::Eventual,
        IdealKind::FiniteSets,
        IdealKind::DensityZero,
        IdealKind::TrivialAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdealKind::Eventual => "eventual",
            IdealKind::FiniteSets => "finite",
            IdealKind::DensityZero => "density0",
            IdealKind::TrivialAll => "trivial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub kind: IdealKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    kind: IdealKind,
    index: IndexDcpo,
}

impl Ideal {
    /// On a finite index every subset is finite, so only the eventual and
    /// trivial ideals are meaningful there.
    pub fn new(kind: IdealKind, index: IndexDcpo) -> Result<Self> {
        match (kind, &index) {
            (IdealKind::FiniteSets, IndexDcpo::Finite(_)) => Err(Error::UnsupportedIdeal("finite")),
            (IdealKind::DensityZero, IndexDcpo::Finite(_)) => {
                Err(Error::UnsupportedIdeal("density0"))
            }
            _ => Ok(Ideal { kind, index }),
        }
    }

    pub fn for_net<E: Copy>(kind: IdealKind, net: &Net<E>) -> Result<Self> {
        Self::new(kind, net.index())
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn index(&self) -> &IndexDcpo {
        &self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == IdealKind::TrivialAll
    }

    pub fn contains(&self, a: &IndexSet) -> Result<bool> {
        if !a.same_shape(&self.index) {
            return Err(Error::IndexMismatch(
                "index set does not live on the ideal's index".into(),
            ));
        }
        Ok(match (self.kind, a) {
            (IdealKind::TrivialAll, _) => true,
            (IdealKind::Eventual, IndexSet::Finite(m)) => {
                let IndexDcpo::Finite(p) = &self.index else {
                    unreachable!()
                };
                (0..p.len()).any(|j| !m.meets(p.up_set(j)))
            }
            // On ω a set avoids some `[j, ∞)` iff it is finite; density zero
            // leaves no room for a full residue class either.
            (_, IndexSet::Omega(o)) => o.is_finite(),
            (_, IndexSet::Finite(_)) => unreachable!("rejected in the constructor"),
        })
    }
}

/// One residue class of a periodic net.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Track<E> {
    Const(E),
    /// `Nat(k)` at the `k`-th step; the counterexample backend only.
    Ascend,
}

/// `(x_j)_{j ∈ J}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Net<E> {
    Finite {
        index: Arc<FinitePoset>,
        values: Vec<E>,
    },
    /// `x_{pk+r}` is track `r` at step `k`, with `p` the number of tracks.
    Omega { tracks: Vec<Track<E>> },
}

impl<E: Copy> Net<E> {
    pub fn finite(index: &IndexDcpo, values: Vec<E>) -> Result<Self> {
        let IndexDcpo::Finite(p) = index else {
            return Err(Error::InvalidNet(
                "finite assignment over an infinite index".into(),
            ));
        };
        if values.len() != p.len() {
            return Err(Error::InvalidNet(format!(
                "{} values for {} index points",
                values.len(),
                p.len()
            )));
        }
        Ok(Net::Finite {
            index: p.clone(),
            values,
        })
    }

    pub fn omega(tracks: Vec<Track<E>>) -> Result<Self> {
        if tracks.is_empty() {
            return Err(Error::InvalidNet("period must be positive".into()));
        }
        Ok(Net::Omega { tracks })
    }

    pub fn constant(x: E) -> Self {
        Net::Omega {
            tracks: vec![Track::Const(x)],
        }
    }

    pub fn index(&self) -> IndexDcpo {
        match self {
            Net::Finite { index, .. } => IndexDcpo::Finite(index.clone()),
            Net::Omega { .. } => IndexDcpo::Omega,
        }
    }

    /// Every value the net takes that is not produced by an ascending track.
    pub fn constants(&self) -> Vec<E> {
        match self {
            Net::Finite { values, .. } => values.clone(),
            Net::Omega { tracks } => tracks
                .iter()
                .filter_map(|t| match t {
                    Track::Const(c) => Some(*c),
                    Track::Ascend => None,
                })
                .collect(),
        }
    }

    pub fn has_ascending_track(&self) -> bool {
        matches!(self, Net::Omega { tracks } if tracks.iter().any(|t| matches!(t, Track::Ascend)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexSpec {
    Named(String),
    Poset(PosetSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TrackSpec {
    Ascend,
    Const { value: String },
}

/// Net JSON: `{"index":"omega","period":2,"tracks":[...]}` or
/// `{"index":{poset},"map":{"j":"x",...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetSpec {
    pub index: IndexSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tracks: Option<Vec<TrackSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
}

impl NetSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("net specs serialize")
    }
}

impl<E: Copy> Net<E> {
    pub fn from_spec<D: Dcpo<Elem = E>>(d: &D, spec: &NetSpec) -> Result<Self> {
        match &spec.index {
            IndexSpec::Named(name) if name == "omega" => {
                let tracks = spec
                    .tracks
                    .as_ref()
                    .ok_or_else(|| Error::Parse("omega net needs tracks".into()))?;
                if let Some(p) = spec.period {
                    if p != tracks.len() {
                        return Err(Error::InvalidNet(format!(
                            "period {p} but {} tracks",
                            tracks.len()
                        )));
                    }
                }
                let tracks = tracks
                    .iter()
                    .map(|t| match t {
                        TrackSpec::Ascend => Ok(Track::Ascend),
                        TrackSpec::Const { value } => d.parse_element(value).map(Track::Const),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Net::omega(tracks)
            }
            IndexSpec::Named(other) => Err(Error::Parse(format!("unknown index `{other}`"))),
            IndexSpec::Poset(ps) => {
                let index = IndexDcpo::finite(FinitePoset::from_spec(ps)?)?;
                let IndexDcpo::Finite(p) = &index else {
                    unreachable!()
                };
                let map = spec
                    .map
                    .as_ref()
                    .ok_or_else(|| Error::Parse("finite net needs a map".into()))?;
                for j in map.keys() {
                    p.index_of(j)?;
                }
                let values = p
                    .elements()
                    .iter()
                    .map(|j| {
                        let v = map
                            .get(j)
                            .ok_or_else(|| Error::InvalidNet(format!("no value at `{j}`")))?;
                        d.parse_element(v)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Net::finite(&index, values)
            }
        }
    }

    pub fn to_spec<D: Dcpo<Elem = E>>(&self, d: &D) -> NetSpec {
        match self {
            Net::Finite { index, values } => NetSpec {
                index: IndexSpec::Poset(index.to_spec()),
                period: None,
                tracks: None,
                map: Some(
                    index
                        .elements()
                        .iter()
                        .cloned()
                        .zip(values.iter().map(|&v| d.element_name(v)))
                        .collect(),
                ),
            },
            Net::Omega { tracks } => NetSpec {
                index: IndexSpec::Named("omega".into()),
                period: Some(tracks.len()),
                tracks: Some(
                    tracks
                        .iter()
                        .map(|t| match t {
                            Track::Ascend => TrackSpec::Ascend,
                            Track::Const(c) => TrackSpec::Const {
                                value: d.element_name(*c),
                            },
                        })
                        .collect(),
                ),
                map: None,
            },
        }
    }
}

/// One rejected candidate and the member whose level set escapes the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub candidate: Vec<String>,
    pub member: Vec<String>,
    pub level: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A directed set with supremum above the point, each member of which
    /// the net is eventually above.
    Directed { set: Vec<String>, sup: String },
    /// A directed family of finite sets, listed in full or up to a horizon
    /// when `schema` describes it.
    Family {
        members: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schema: Option<String>,
    },
    /// Every candidate that could have witnessed convergence, each refuted.
    Rejected { candidates: Vec<Rejection> },
    /// A set whose level set is not in the ideal although convergence needs it.
    Escapes { set: Vec<String>, level: String },
    /// A point of every admissible family's meet that is not above the target.
    MeetEscapes { point: String, schema: String },
    /// An eventual lower bound `F` with the target outside `↑F`.
    LowerBound { fin: Vec<String>, level: String },
    /// Every open neighbourhood has small level set.
    AllOpens { checked: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceVerdict {
    pub holds: bool,
    pub witness: Witness,
}

impl ConvergenceVerdict {
    pub fn yes(witness: Witness) -> Self {
        ConvergenceVerdict {
            holds: true,
            witness,
        }
    }

    pub fn no(witness: Witness) -> Self {
        ConvergenceVerdict {
            holds: false,
            witness,
        }
    }
}

/// Convergence checkers over a backend.
pub trait NetConvergence: Approximation {
    type Topology;
    type GiFamily: Clone + std::fmt::Debug;

    /// `{k : Nat k ∉ s}` for ascending tracks; unsupported by default.
    fn ascend_missing(&self, _s: &Self::Set) -> Result<NatSet> {
        Err(Error::InvalidNet(
            "ascending tracks need the counterexample backend".into(),
        ))
    }

    fn render_set(&self, s: &Self::Set) -> Vec<String>;

    /// `{j : x_j ∉ s}`.
    fn level_set(&self, net: &Net<Self::Elem>, s: &Self::Set) -> Result<IndexSet> {
        match net {
            Net::Finite { values, .. } => Ok(IndexSet::Finite(
                values
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| !self.contains(s, v))
                    .fold(ElemSet::EMPTY, |acc, (j, _)| acc.with(j)),
            )),
            Net::Omega { tracks } => {
                let p = tracks.len() as u64;
                let mut acc = OmegaSet::empty();
                for (r, t) in tracks.iter().enumerate() {
                    let r = r as u64;
                    let part = match t {
                        Track::Const(c) if self.contains(s, *c) => OmegaSet::empty(),
                        Track::Const(_) => OmegaSet::residues(p, [r]),
                        Track::Ascend => match self.ascend_missing(s)? {
                            NatSet::Finite(ks) => OmegaSet::finite(ks.iter().map(|k| p * k + r)),
                            NatSet::Cofinite(ks) => {
                                OmegaSet::from_parts(p, [r], [], ks.iter().map(|k| p * k + r))
                            }
                        },
                    };
                    acc = acc.union(&part);
                }
                Ok(IndexSet::Omega(acc))
            }
        }
    }

    /// Whether `{j : x_j ∉ s}` belongs to the ideal.
    fn eventually_in(&self, net: &Net<Self::Elem>, s: &Self::Set, ideal: &Ideal) -> Result<bool> {
        ideal.contains(&self.level_set(net, s)?)
    }

    /// Some index `j₀` has `x_j ∈ s` for every `j ≥ j₀`.
    fn is_eventually_in(&self, net: &Net<Self::Elem>, s: &Self::Set) -> Result<bool> {
        Ok(match (net, self.level_set(net, s)?) {
            (Net::Finite { index, .. }, IndexSet::Finite(out)) => {
                (0..index.len()).any(|j0| !index.up_set(j0).meets(out))
            }
            (_, IndexSet::Omega(out)) => out.is_finite(),
            _ => unreachable!("level sets live on the net's index"),
        })
    }

    fn render_level(&self, net: &Net<Self::Elem>, s: &Self::Set) -> Result<String> {
        Ok(net.index().render(&self.level_set(net, s)?))
    }

    fn converges_is(
        &self,
        net: &Net<Self::Elem>,
        x: Self::Elem,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict>;
    fn converges_gis(
        &self,
        net: &Net<Self::Elem>,
        x: Self::Elem,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict>;
    fn converges_topological(
        &self,
        net: &Net<Self::Elem>,
        x: Self::Elem,
        ideal: &Ideal,
        t: &Self::Topology,
    ) -> Result<ConvergenceVerdict>;
    /// `{F : {j : x_j ∉ ↑F} ∈ I}`.
    fn gi_family(&self, net: &Net<Self::Elem>, ideal: &Ideal) -> Result<Self::GiFamily>;
    fn is_gi_liminf(
        &self,
        net: &Net<Self::Elem>,
        x: Self::Elem,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict>;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_ideals() {
        let i = Ideal::new(IdealKind::Eventual, IndexDcpo::Omega).unwrap();
        assert!(i
            .contains(&IndexSet::Omega(OmegaSet::finite([0, 5, 9])))
            .unwrap());
        assert!(!i
            .contains(&IndexSet::Omega(OmegaSet::residues(2, [1])))
            .unwrap());
        let dz = Ideal::new(IdealKind::DensityZero, IndexDcpo::Omega).unwrap();
        assert!(!dz
            .contains(&IndexSet::Omega(OmegaSet::residues(2, [0])))
            .unwrap());
        let t = Ideal::new(IdealKind::TrivialAll, IndexDcpo::Omega).unwrap();
        assert!(t.contains(&IndexSet::Omega(OmegaSet::all())).unwrap());
        assert!(matches!(
            i.contains(&IndexSet::Finite(ElemSet(1))),
            Err(Error::IndexMismatch(_))
        ));
    }

    #[test]
    fn finite_eventual_ideal() {
        let p = FinitePoset::build("j", &["0", "1", "2"], &[("0", "2"), ("1", "2")]).unwrap();
        let index = IndexDcpo::finite(p).unwrap();
        let i = Ideal::new(IdealKind::Eventual, index.clone()).unwrap();
        assert!(i
            .contains(&IndexSet::Finite(ElemSet::from_indices([0, 1])))
            .unwrap());
        assert!(!i
            .contains(&IndexSet::Finite(ElemSet::singleton(2)))
            .unwrap());
        assert!(i.contains(&IndexSet::Finite(ElemSet::EMPTY)).unwrap());
        assert_eq!(
            Ideal::new(IdealKind::FiniteSets, index.clone()),
            Err(Error::UnsupportedIdeal("finite"))
        );
        let anti = FinitePoset::build::<&str>("a", &["0", "1"], &[]).unwrap();
        assert_eq!(IndexDcpo::finite(anti), Err(Error::NotDirected));
    }

    #[test]
    fn net_json_round_trip() {
        let d = crate::example_one::ExampleOne;
        let text = r#"{"index":"omega","period":2,"tracks":[{"kind":"ascend"},{"kind":"const","value":"a"}]}"#;
        let spec = NetSpec::from_json(text).unwrap();
        let net = Net::from_spec(&d, &spec).unwrap();
        assert!(net.has_ascending_track());
        assert_eq!(net.to_spec(&d), spec);
        assert_eq!(spec.to_json(), text);

        let text = r#"{"index":{"name":"j","elements":["0","1"],"le":[["0","1"]]},"map":{"0":"a","1":"top"}}"#;
        let spec = NetSpec::from_json(text).unwrap();
        let net = Net::from_spec(&d, &spec).unwrap();
        assert_eq!(
            net.constants(),
            vec![crate::OneElem::A, crate::OneElem::Top]
        );
        let bad = r#"{"index":"omega","period":3,"tracks":[{"kind":"ascend"}]}"#;
        assert!(Net::from_spec(&d, &NetSpec::from_json(bad).unwrap()).is_err());
    }
}
