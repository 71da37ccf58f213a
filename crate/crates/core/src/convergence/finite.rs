//! Convergence on finite posets. Directed sets and directed families both
//! collapse to a single element or set, which is what makes brute force
//! exact here.

use crate::bits::ElemSet;
use crate::domain::FiniteDomain;
use crate::error::Result;
use crate::topology::FiniteTopology;
use crate::waybelow::Antichain;

use super::{ConvergenceVerdict, Ideal, Net, NetConvergence, Rejection, Witness};

impl FiniteDomain {
    /// Every point the net GI-converges to. Not assumed to be unique.
    pub fn gi_limits(&self, net: &Net<usize>, ideal: &Ideal) -> Result<ElemSet> {
        let mut out = ElemSet::EMPTY;
        for x in 0..self.len() {
            if self.is_gi_liminf(net, x, ideal)?.holds {
                out = out.with(x);
            }
        }
        Ok(out)
    }

    /// Points the net converges to in the given mode, as a mask.
    pub fn limits_by(
        &self,
        net: &Net<usize>,
        ideal: &Ideal,
        check: impl Fn(&Self, &Net<usize>, usize, &Ideal) -> Result<ConvergenceVerdict>,
    ) -> Result<ElemSet> {
        let mut out = ElemSet::EMPTY;
        for x in 0..self.len() {
            if check(self, net, x, ideal)?.holds {
                out = out.with(x);
            }
        }
        Ok(out)
    }
}

impl NetConvergence for FiniteDomain {
    type Topology = FiniteTopology;
    type GiFamily = Vec<Antichain>;

    fn render_set(&self, s: &ElemSet) -> Vec<String> {
        self.ids_of(*s)
    }

    /// A finite directed set can be replaced by its greatest element, so it
    /// is enough to try `D = {m}` for `m ≥ x`, highest first.
    fn converges_is(
        &self,
        net: &Net<usize>,
        x: usize,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict> {
        let mut rejected = Vec::new();
        let above = self.up_set(x);
        for m in self
            .linear_extension()
            .into_iter()
            .rev()
            .filter(|&m| above.contains(m))
        {
            let up = self.up_set(m);
            if self.eventually_in(net, &up, ideal)? {
                let name = self.element(m).to_owned();
                return Ok(ConvergenceVerdict::yes(Witness::Directed {
                    set: vec![name.clone()],
                    sup: name,
                }));
            }
            rejected.push(Rejection {
                candidate: vec![self.element(m).to_owned()],
                member: vec![self.element(m).to_owned()],
                level: self.render_level(net, &up)?,
            });
        }
        Ok(ConvergenceVerdict::no(Witness::Rejected {
            candidates: rejected,
        }))
    }

    /// A finite directed family has a Smyth-least member `F`, and then
    /// `↑F ⊆ ↑x`. Candidates are the antichains inside `↑x`, `{x}` first.
    fn converges_gis(
        &self,
        net: &Net<usize>,
        x: usize,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict> {
        let ux = self.up_set(x);
        let single = ElemSet::singleton(x);
        let candidates = std::iter::once(single).chain(
            self.antichains()
                .iter()
                .copied()
                .filter(|&a| a != single && a.is_subset(ux)),
        );
        for f in candidates {
            if self.eventually_in(net, &self.up(f), ideal)? {
                return Ok(ConvergenceVerdict::yes(Witness::Family {
                    members: vec![self.ids_of(f)],
                    schema: None,
                }));
            }
        }
        Ok(ConvergenceVerdict::no(Witness::Escapes {
            set: self.ids_of(ux),
            level: self.render_level(net, &ux)?,
        }))
    }

    fn converges_topological(
        &self,
        net: &Net<usize>,
        x: usize,
        ideal: &Ideal,
        t: &FiniteTopology,
    ) -> Result<ConvergenceVerdict> {
        let mut checked = 0;
        for u in t.open_neighbourhoods(x) {
            checked += 1;
            if !self.eventually_in(net, &u, ideal)? {
                return Ok(ConvergenceVerdict::no(Witness::Escapes {
                    set: self.ids_of(u),
                    level: self.render_level(net, &u)?,
                }));
            }
        }
        Ok(ConvergenceVerdict::yes(Witness::AllOpens { checked }))
    }

    fn gi_family(&self, net: &Net<usize>, ideal: &Ideal) -> Result<Vec<Antichain>> {
        let mut out = Vec::new();
        for a in self.all_antichains() {
            if self.eventually_in(net, &self.up(a.set()), ideal)? {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// On success the witness is the whole GI family: it is directed, every
    /// member is eventual, and its meet is exactly `↑x`.
    fn is_gi_liminf(
        &self,
        net: &Net<usize>,
        x: usize,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict> {
        let gis = self.converges_gis(net, x, ideal)?;
        if !gis.holds {
            return Ok(gis);
        }
        let family = self.gi_family(net, ideal)?;
        if let Some(f) = family.iter().find(|f| !self.up(f.set()).contains(x)) {
            return Ok(ConvergenceVerdict::no(Witness::LowerBound {
                fin: self.ids_of(f.set()),
                level: self.render_level(net, &self.up(f.set()))?,
            }));
        }
        Ok(ConvergenceVerdict::yes(Witness::Family {
            members: family.iter().map(|f| self.ids_of(f.set())).collect(),
            schema: None,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::{IdealKind, IndexDcpo, Track};
    use crate::poset::tests::diamond;
    use crate::topology::{lawson_topology, scott_topology};

    fn dom() -> FiniteDomain {
        FiniteDomain::new(diamond()).unwrap()
    }

    fn id(d: &FiniteDomain, s: &str) -> usize {
        d.index_of(s).unwrap()
    }

    fn eventual() -> Ideal {
        Ideal::new(IdealKind::Eventual, IndexDcpo::Omega).unwrap()
    }

    #[test]
    fn constant_net_examples() {
        let d = dom();
        let l = id(&d, "l");
        let net = Net::constant(l);
        let i = eventual();
        let is = d.converges_is(&net, id(&d, "bot"), &i).unwrap();
        assert!(is.holds);
        assert_eq!(
            is.witness,
            Witness::Directed {
                set: vec!["l".into()],
                sup: "l".into()
            }
        );
        let sigma = scott_topology(&d).unwrap();
        assert!(
            d.converges_topological(&net, id(&d, "bot"), &i, &sigma)
                .unwrap()
                .holds
        );
        let v = d
            .converges_topological(&net, id(&d, "top"), &i, &sigma)
            .unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Witness::Escapes {
                set: vec!["top".into()],
                level: "all".into()
            }
        );
    }

    #[test]
    fn alternating_net() {
        let d = dom();
        let net = Net::omega(vec![Track::Const(id(&d, "l")), Track::Const(id(&d, "r"))]).unwrap();
        let i = eventual();
        let fam: Vec<Vec<String>> = d
            .gi_family(&net, &i)
            .unwrap()
            .iter()
            .map(|a| d.ids_of(a.set()))
            .collect();
        assert_eq!(
            fam,
            vec![vec!["bot".to_string()], vec!["l".into(), "r".into()]]
        );
        let v = d.is_gi_liminf(&net, id(&d, "bot"), &i).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Witness::LowerBound {
                fin: vec!["l".into(), "r".into()],
                level: "{}".into()
            }
        );
    }

    #[test]
    fn constant_top_gi_limits() {
        let d = dom();
        let net = Net::constant(id(&d, "top"));
        let i = eventual();
        assert!(d.is_gi_liminf(&net, id(&d, "top"), &i).unwrap().holds);
        let v = d.is_gi_liminf(&net, id(&d, "l"), &i).unwrap();
        assert!(!v.holds);
        assert_eq!(
            d.gi_limits(&net, &i).unwrap(),
            ElemSet::singleton(id(&d, "top"))
        );
    }

    #[test]
    fn trivial_ideal_converges_everywhere() {
        let d = dom();
        let net = Net::omega(vec![Track::Const(0), Track::Const(3)]).unwrap();
        let i = Ideal::new(IdealKind::TrivialAll, IndexDcpo::Omega).unwrap();
        for x in 0..d.len() {
            assert!(d.converges_gis(&net, x, &i).unwrap().holds);
            assert!(d.converges_is(&net, x, &i).unwrap().holds);
        }
    }

    #[test]
    fn gi_on_finite_index_matches_lawson() {
        let d = dom();
        let j = crate::poset::FinitePoset::build("j", &["0", "1"], &[("0", "1")]).unwrap();
        let index = IndexDcpo::finite(j).unwrap();
        let net = Net::finite(&index, vec![id(&d, "top"), id(&d, "l")]).unwrap();
        let i = Ideal::new(IdealKind::Eventual, index).unwrap();
        let lambda = lawson_topology(&d).unwrap();
        for x in 0..d.len() {
            let gi = d.is_gi_liminf(&net, x, &i).unwrap().holds;
            let lw = d.converges_topological(&net, x, &i, &lambda).unwrap().holds;
            assert_eq!(gi, lw);
            assert_eq!(gi, x == id(&d, "l"));
        }
    }

    #[test]
    fn ascending_tracks_rejected() {
        let d = dom();
        let net: Net<usize> = Net::omega(vec![Track::Ascend]).unwrap();
        assert!(d.converges_gis(&net, 0, &eventual()).is_err());
    }
}
