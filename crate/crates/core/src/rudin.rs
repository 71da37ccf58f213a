//! Constructive Rudin's lemma for finite directed families: a directed set
//! inside the union that meets every member.

use serde::{Deserialize, Serialize};

use crate::bits::ElemSet;
use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::example_one::OneSet;
use crate::oracle;
use crate::topology::symbolic as topo;
use crate::waybelow::{OneFamily, OneFinSet};

/// Family JSON: `{"sets":[["l","r"],["top"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub sets: Vec<Vec<String>>,
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn resolve(&self, d: &FiniteDomain) -> Result<Vec<ElemSet>> {
        self.sets.iter().map(|s| d.set_from_ids(s)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RudinWitness {
    pub directed: ElemSet,
    /// For each member, in family order, the chosen element of `D ∩ F`.
    pub meets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeetEntry {
    pub member: Vec<String>,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RudinReport {
    pub directed: Vec<String>,
    pub meets: Vec<MeetEntry>,
}

impl RudinWitness {
    pub fn report(&self, d: &FiniteDomain, fam: &[ElemSet]) -> RudinReport {
        RudinReport {
            directed: d.ids_of(self.directed),
            meets: fam
                .iter()
                .zip(&self.meets)
                .map(|(&f, &e)| MeetEntry {
                    member: d.ids_of(f),
                    element: d.element(e).to_owned(),
                })
                .collect(),
        }
    }

    /// Definitional re-check: directed, inside the union, meeting every member
    /// at the recorded element.
    pub fn validate(&self, d: &FiniteDomain, fam: &[ElemSet]) -> bool {
        let union = fam.iter().fold(ElemSet::EMPTY, |acc, &f| acc | f);
        self.meets.len() == fam.len()
            && self.directed.is_subset(union)
            && oracle::is_directed_pairwise(d, self.directed)
            && fam
                .iter()
                .zip(&self.meets)
                .all(|(&f, &e)| f.contains(e) && self.directed.contains(e))
    }
}

/// Every two members have a member whose up-set lies in both of theirs.
pub fn is_directed_family(d: &FiniteDomain, fam: &[ElemSet]) -> bool {
    let ups: Vec<ElemSet> = fam.iter().map(|&f| d.up(f)).collect();
    oracle::is_smyth_directed(&ups)
}

fn membership_key(d: &FiniteDomain, s: ElemSet) -> Vec<bool> {
    (0..d.len()).map(|i| s.contains(i)).collect()
}

/// Takes a Smyth-least member `F₀`, its smallest element `d*`, and from each
/// member the smallest element below `d*`.
pub fn extract_directed(d: &FiniteDomain, fam: &[ElemSet]) -> Result<RudinWitness> {
    if fam.iter().any(|f| f.is_empty()) {
        return Err(Error::EmptyFinSet);
    }
    if !is_directed_family(d, fam) {
        return Err(Error::NotDirectedFamily);
    }
    let ups: Vec<ElemSet> = fam.iter().map(|&f| d.up(f)).collect();
    let f0 = fam
        .iter()
        .zip(&ups)
        .filter(|(_, &u)| ups.iter().all(|&v| u.is_subset(v)))
        .map(|(&f, &u)| (membership_key(d, u), membership_key(d, f), f))
        .min()
        .map(|(_, _, f)| f)
        .ok_or(Error::NotDirectedFamily)?;
    let top = f0.first().expect("members are nonempty");
    let meets: Vec<usize> = fam
        .iter()
        .map(|f| {
            f.iter()
                .find(|&e| d.le(e, top))
                .expect("F₀ lies above every member")
        })
        .collect();
    let directed = meets
        .iter()
        .fold(ElemSet::singleton(top), |acc, &e| acc.with(e));
    let w = RudinWitness { directed, meets };
    if !w.validate(d, fam) {
        return Err(Error::ConsistencyViolation(
            "extracted set failed re-validation".into(),
        ));
    }
    Ok(w)
}

/// For Scott-open `U` containing `∩ ↑F`, a member with `↑F ⊆ U`, first in
/// family order.
pub fn rudin_corollary_check(d: &FiniteDomain, fam: &[ElemSet], u: ElemSet) -> Result<ElemSet> {
    if !d.is_scott_open(u) {
        return Err(Error::PreconditionFailed("set is not Scott-open".into()));
    }
    if !is_directed_family(d, fam) {
        return Err(Error::NotDirectedFamily);
    }
    let meet = fam.iter().fold(d.full(), |acc, &f| acc & d.up(f));
    if !meet.is_subset(u) {
        return Err(Error::PreconditionFailed(
            "the meet of the family is not inside the open set".into(),
        ));
    }
    fam.iter()
        .copied()
        .find(|&f| d.up(f).is_subset(u))
        .ok_or_else(|| Error::NoWitness("no member of the family lies inside the open set".into()))
}

/// The corollary for a family schema on the counterexample. Once a member's
/// natural passes the tail of `U`, membership stops changing.
pub fn rudin_corollary_example_one(fam: &OneFamily, u: &OneSet) -> Result<OneFinSet> {
    if !topo::is_scott_open(u) {
        return Err(Error::PreconditionFailed("set is not Scott-open".into()));
    }
    if !fam.is_directed() {
        return Err(Error::NotDirectedFamily);
    }
    if !fam.meet().is_subset(u) {
        return Err(Error::PreconditionFailed(
            "the meet of the family is not inside the open set".into(),
        ));
    }
    let reach = u.tail().unwrap_or(0).max(u.max_nat().unwrap_or(0)) + 1;
    fam.members_up_to(reach)
        .into_iter()
        .find(|f| f.up().is_subset(u))
        .ok_or_else(|| Error::NoWitness("no member of the family lies inside the open set".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{chain, diamond};
    use crate::example_one::OneElem;

    fn dom() -> FiniteDomain {
        FiniteDomain::new(diamond()).unwrap()
    }

    fn fam(d: &FiniteDomain, sets: &[&[&str]]) -> Vec<ElemSet> {
        sets.iter().map(|s| d.set_from_ids(s).unwrap()).collect()
    }

    #[test]
    fn directed_families() {
        let d = dom();
        assert!(is_directed_family(&d, &fam(&d, &[&["l", "r"], &["top"]])));
        assert!(!is_directed_family(&d, &fam(&d, &[&["l"], &["r"]])));
        assert!(is_directed_family(&d, &fam(&d, &[&["l"]])));
    }

    #[test]
    fn extraction_examples() {
        let d = dom();
        let f = fam(&d, &[&["l", "r"], &["top"]]);
        let w = extract_directed(&d, &f).unwrap();
        assert_eq!(d.ids_of(w.directed), vec!["l", "top"]);
        let single = fam(&d, &[&["l", "r"]]);
        assert_eq!(
            d.ids_of(extract_directed(&d, &single).unwrap().directed),
            vec!["l"]
        );
        let c = FiniteDomain::new(chain(3)).unwrap();
        let f = fam(&c, &[&["0"], &["1"], &["2"]]);
        assert_eq!(
            c.ids_of(extract_directed(&c, &f).unwrap().directed),
            vec!["0", "1", "2"]
        );
        assert_eq!(
            extract_directed(&d, &fam(&d, &[&["l"], &["r"]])),
            Err(Error::NotDirectedFamily)
        );
    }

    #[test]
    fn corollary_examples() {
        let d = dom();
        let f = fam(&d, &[&["l", "r"], &["top"]]);
        let top = d.set_from_ids(&["top"]).unwrap();
        assert_eq!(rudin_corollary_check(&d, &f, top).unwrap(), top);
        let bot = fam(&d, &[&["bot"]]);
        assert!(matches!(
            rudin_corollary_check(&d, &bot, top),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn corollary_on_the_counterexample() {
        let u = OneSet::new([], Some(6), true, true);
        let f = rudin_corollary_example_one(&OneFamily::PAIRS_WITH_A, &u).unwrap();
        assert_eq!(f.elems(), &[OneElem::Nat(6), OneElem::A]);
        let not_open = OneSet::from_elems(&[OneElem::A, OneElem::Top]);
        assert!(rudin_corollary_example_one(&OneFamily::PAIRS_WITH_A, &not_open).is_err());
    }
}
