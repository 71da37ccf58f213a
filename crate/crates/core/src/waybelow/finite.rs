use crate::bits::ElemSet;
use crate::dcpo::Dcpo;
use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::oracle;

use super::{Approximation, ClassifyReport};

/// Nonempty antichain of a finite poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain(ElemSet);

impl Antichain {
    pub fn set(self) -> ElemSet {
        self.0
    }
}

impl FiniteDomain {
    pub fn antichain(&self, s: ElemSet) -> Result<Antichain> {
        if s.is_empty() {
            return Err(Error::EmptyFinSet);
        }
        Ok(Antichain(self.minimal(s)))
    }

    pub fn antichain_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Antichain> {
        self.antichain(self.set_from_ids(ids)?)
    }

    pub fn all_antichains(&self) -> impl Iterator<Item = Antichain> + '_ {
        self.antichains().iter().map(|&s| Antichain(s))
    }

    /// `{F : F ≪ x}` over canonical antichains.
    pub fn fin_of(&self, x: usize) -> Vec<Antichain> {
        let target = self.singleton_fin(x);
        self.all_antichains()
            .filter(|f| self.set_way_below(f, &target))
            .collect()
    }

    /// `{y : y ≪ x}`.
    pub fn way_down(&self, x: usize) -> ElemSet {
        (0..self.len())
            .filter(|&y| self.point_way_below(y, x))
            .fold(ElemSet::EMPTY, ElemSet::with)
    }

    fn way_below_sets(&self, up_g: ElemSet, up_h: ElemSet) -> bool {
        self.directed()
            .iter()
            .all(|d| !up_h.contains(d.sup) || d.set.meets(up_g))
    }

    /// Smyth-directed and `∩ ↑F = ↑x` for every `fin(x)`.
    fn quasi_continuity_failure(&self, x: usize) -> Option<String> {
        let fin = self.fin_of(x);
        let ups: Vec<ElemSet> = fin.iter().map(|f| self.fin_up(f)).collect();
        if !oracle::is_smyth_directed(&ups) {
            return Some(format!("fin({}) is not a directed family", self.element(x)));
        }
        let meet = ups.iter().fold(self.full(), |acc, &u| acc & u);
        (meet != self.up_set(x)).then(|| {
            format!(
                "meet of fin({}) is {:?}, not its up-set",
                self.element(x),
                self.ids_of(meet)
            )
        })
    }
}

impl Approximation for FiniteDomain {
    type Fin = Antichain;

    fn fin_set(&self, elems: &[usize]) -> Result<Antichain> {
        self.antichain(self.set_of(elems))
    }

    fn fin_elems(&self, f: &Antichain) -> Vec<usize> {
        f.0.iter().collect()
    }

    fn fin_up(&self, f: &Antichain) -> ElemSet {
        self.up(f.0)
    }

    fn set_way_below(&self, g: &Antichain, h: &Antichain) -> bool {
        self.way_below_sets(self.up(g.0), self.up(h.0))
    }

    fn point_way_below(&self, x: usize, y: usize) -> bool {
        self.way_below_sets(self.up_set(x), self.up_set(y))
    }

    fn way_up(&self, f: &Antichain) -> ElemSet {
        let up_f = self.up(f.0);
        (0..self.len())
            .filter(|&x| self.way_below_sets(up_f, self.up_set(x)))
            .fold(ElemSet::EMPTY, ElemSet::with)
    }

    fn interpolate(&self, h: &Antichain, x: usize) -> Result<Antichain> {
        let target = self.singleton_fin(x);
        if !self.set_way_below(h, &target) {
            return Err(Error::PreconditionFailed(format!(
                "{:?} is not way below {}",
                self.ids_of(h.0),
                self.element(x)
            )));
        }
        if self.classify_quasi().is_some() {
            return Err(Error::NotQuasiContinuous);
        }
        std::iter::once(target)
            .chain(self.all_antichains())
            .find(|f| self.set_way_below(h, f) && self.set_way_below(f, &target))
            .ok_or_else(|| Error::NoWitness(format!("interpolation below {}", self.element(x))))
    }

    fn classify(&self) -> ClassifyReport {
        let mut r = ClassifyReport {
            is_dcpo: true,
            is_continuous: true,
            is_quasi_continuous: true,
            is_meet_continuous: true,
            witnesses: Vec::new(),
        };
        if let Some(d) = self
            .directed()
            .iter()
            .find(|d| self.supremum(d.set) != Some(d.sup))
        {
            r.is_dcpo = false;
            r.witness(
                "dcpo",
                format!("directed set {:?} has no supremum", self.ids_of(d.set)),
            );
        }
        for x in 0..self.len() {
            let wd = self.way_down(x);
            if !oracle::is_directed_pairwise(self.poset(), wd) {
                r.is_continuous = false;
                r.witness(
                    "continuous",
                    format!(
                        "way-down set of {} is {:?}, not directed",
                        self.element(x),
                        self.ids_of(wd)
                    ),
                );
                break;
            }
            if self.supremum(wd) != Some(x) {
                r.is_continuous = false;
                r.witness(
                    "continuous",
                    format!(
                        "way-down set of {} does not have it as supremum",
                        self.element(x)
                    ),
                );
                break;
            }
        }
        if let Some(w) = self.classify_quasi() {
            r.is_quasi_continuous = false;
            r.witness("quasi_continuous", w);
        }
        let opens: Vec<ElemSet> = self
            .upper_sets()
            .into_iter()
            .filter(|&u| self.is_scott_open(u))
            .collect();
        'outer: for x in 0..self.len() {
            for &u in &opens {
                let v = self.up(u & self.down_set(x));
                if !self.is_scott_open(v) {
                    r.is_meet_continuous = false;
                    r.witness(
                        "meet_continuous",
                        format!(
                            "x = {}, U = {:?}: up(U ∩ down x) = {:?} is not Scott-open",
                            self.element(x),
                            self.ids_of(u),
                            self.ids_of(v)
                        ),
                    );
                    break 'outer;
                }
            }
        }
        r
    }
}

impl FiniteDomain {
    fn classify_quasi(&self) -> Option<String> {
        (0..self.len()).find_map(|x| self.quasi_continuity_failure(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinitePoset;

    fn diamond() -> FiniteDomain {
        FiniteDomain::new(
            FinitePoset::build(
                "diamond",
                &["bot", "l", "r", "top"],
                &[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn smyth_examples() {
        let d = diamond();
        let bot = d.antichain_ids(&["bot"]).unwrap();
        let lr = d.antichain_ids(&["l", "r"]).unwrap();
        let l = d.antichain_ids(&["l"]).unwrap();
        let r = d.antichain_ids(&["r"]).unwrap();
        assert!(d.smyth_leq(&lr, &lr));
        assert!(d.smyth_leq(&bot, &lr));
        assert!(!d.smyth_leq(&l, &r));
    }

    #[test]
    fn finite_way_below_is_order() {
        let d = diamond();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(d.point_way_below(x, y), d.le(x, y));
            }
        }
    }

    #[test]
    fn fin_of_top_in_diamond() {
        let d = diamond();
        let top = d.index_of("top").unwrap();
        let fin: Vec<Vec<String>> = d.fin_of(top).iter().map(|f| d.render_fin(f)).collect();
        for want in [
            vec!["l"],
            vec!["r"],
            vec!["top"],
            vec!["bot"],
            vec!["l", "r"],
        ] {
            assert!(fin.iter().any(|f| *f == want), "missing {want:?}");
        }
        assert_eq!(fin.len(), 5);
    }

    #[test]
    fn fin_of_singleton_poset() {
        let p = FiniteDomain::new(FinitePoset::build::<&str>("one", &["x"], &[]).unwrap()).unwrap();
        assert_eq!(p.fin_of(0), vec![p.singleton_fin(0)]);
    }

    #[test]
    fn interpolation_returns_the_point() {
        let d = diamond();
        let top = d.index_of("top").unwrap();
        let h = d.antichain_ids(&["l", "r"]).unwrap();
        let f = d.interpolate(&h, top).unwrap();
        assert!(d.set_way_below(&h, &f) && d.set_way_below(&f, &d.singleton_fin(top)));
        assert_eq!(f, d.singleton_fin(top));
        let l = d.index_of("l").unwrap();
        assert!(matches!(
            d.interpolate(&d.antichain_ids(&["r"]).unwrap(), l),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn way_up_is_up_set() {
        let d = diamond();
        for f in d.all_antichains() {
            assert_eq!(d.way_up(&f), d.fin_up(&f));
        }
    }

    #[test]
    fn diamond_is_continuous() {
        let r = diamond().classify();
        assert!(r.is_dcpo && r.is_continuous && r.is_quasi_continuous && r.is_meet_continuous);
        assert!(r.is_consistent());
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn empty_fin_set_rejected() {
        assert_eq!(diamond().antichain(ElemSet::EMPTY), Err(Error::EmptyFinSet));
    }
}
