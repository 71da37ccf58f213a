//! Convergence on the counterexample dcpo.
//!
//! Nets mention finitely many naturals as constants. Past the largest of
//! them, every level set of the form `{j : x_j ∉ ↑{n}}` changes only by
//! finitely many indices as `n` grows, and none of the ideals here can see
//! finite changes on `ω`. Checking parameters up to one step beyond that
//! horizon therefore decides the uniform tail.

use crate::dcpo::Dcpo;
use crate::error::{Error, Result};
use crate::example_one::{ExampleOne, NatSet, OneElem, OneSet};
use crate::topology::symbolic::OneTopology;
use crate::waybelow::{Approximation, Bound, OneFamily, OneFinSet};

use super::{ConvergenceVerdict, Ideal, Net, NetConvergence, Rejection, Witness};

impl ExampleOne {
    /// One past the largest natural constant in the net.
    pub fn net_horizon(&self, net: &Net<OneElem>) -> u64 {
        net.constants()
            .iter()
            .filter_map(|v| v.nat())
            .max()
            .map_or(1, |m| m + 1)
    }

    fn bound_of(&self, horizon: u64, member: impl Fn(u64) -> Result<bool>) -> Result<Bound> {
        let flags = (0..=horizon).map(member).collect::<Result<Vec<bool>>>()?;
        let prefix = flags.iter().take_while(|&&b| b).count();
        if flags[prefix..].iter().any(|&b| b) {
            return Err(Error::ConsistencyViolation(
                "eventual members are not downward closed".into(),
            ));
        }
        Ok(match prefix {
            0 => Bound::Empty,
            n if n == flags.len() => Bound::All,
            n => Bound::UpTo(n as u64 - 1),
        })
    }

    fn fin_eventual(&self, net: &Net<OneElem>, f: &[OneElem], ideal: &Ideal) -> Result<bool> {
        self.eventually_in(net, &OneSet::from_elems(f).up(), ideal)
    }

    /// Every point the net GI-converges to, among the representatives.
    pub fn gi_limits(&self, net: &Net<OneElem>, ideal: &Ideal) -> Result<Vec<OneElem>> {
        let mut out = Vec::new();
        for x in self.points_for(net) {
            if self.is_gi_liminf(net, x, ideal)?.holds {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Naturals up to one past the horizon, then `a` and `top`.
    pub fn points_for(&self, net: &Net<OneElem>) -> Vec<OneElem> {
        let h = self.net_horizon(net);
        (0..=h + 1)
            .map(OneElem::Nat)
            .chain([OneElem::A, OneElem::Top])
            .collect()
    }
}

impl NetConvergence for ExampleOne {
    type Topology = OneTopology;
    type GiFamily = OneFamily;

    fn ascend_missing(&self, s: &OneSet) -> Result<NatSet> {
        Ok(s.missing_nats())
    }

    fn render_set(&self, s: &OneSet) -> Vec<String> {
        s.render()
    }

    /// Candidates: singletons `{d}` with `x ≤ d`, then the chain `N` with
    /// supremum `top`. The set of eventual points is a lower set, so any
    /// directed witness can be traded for one of these.
    fn converges_is(
        &self,
        net: &Net<OneElem>,
        x: OneElem,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict> {
        let h = self.net_horizon(net).max(x.nat().unwrap_or(0)) + 1;
        let mut rejected = Vec::new();
        let singles: Vec<OneElem> = (0..=h)
            .map(OneElem::Nat)
            .chain([OneElem::A, OneElem::Top])
            .filter(|&d| self.leq(x, d))
            .collect();
        for d in singles {
            let up = OneSet::from_elems(&[d]).up();
            if self.eventually_in(net, &up, ideal)? {
                return Ok(ConvergenceVerdict::yes(Witness::Directed {
                    set: vec![d.to_string()],
                    sup: d.to_string(),
                }));
            }
            rejected.push(Rejection {
                candidate: vec![d.to_string()],
                member: vec![d.to_string()],
                level: self.render_level(net, &up)?,
            });
        }
        // Eventual naturals form an initial segment, uniform past the horizon.
        let mut blocker = None;
        for n in 0..=h {
            let up = OneSet::from_elems(&[OneElem::Nat(n)]).up();
            if !self.eventually_in(net, &up, ideal)? {
                blocker = Some((n, self.render_level(net, &up)?));
                break;
            }
        }
        match blocker {
            None => Ok(ConvergenceVerdict::yes(Witness::Directed {
                set: vec!["0..".into()],
                sup: OneElem::Top.to_string(),
            })),
            Some((n, level)) => {
                rejected.push(Rejection {
                    candidate: vec!["0..".into()],
                    member: vec![n.to_string()],
                    level,
                });
                Ok(ConvergenceVerdict::no(Witness::Rejected {
                    candidates: rejected,
                }))
            }
        }
    }

    /// The GI family is itself directed and has the smallest meet among
    /// directed families of eventual sets, so it decides convergence.
    fn converges_gis(
        &self,
        net: &Net<OneElem>,
        x: OneElem,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict> {
        let g = self.gi_family(net, ideal)?;
        if g.is_empty() {
            return Ok(ConvergenceVerdict::no(Witness::Rejected {
                candidates: vec![],
            }));
        }
        let meet = g.meet();
        let ux = OneSet::from_elems(&[x]).up();
        if meet.is_subset(&ux) {
            let h = self.net_horizon(net) + 1;
            return Ok(ConvergenceVerdict::yes(Witness::Family {
                members: g
                    .members_up_to(h)
                    .iter()
                    .map(|f| self.render_fin(f))
                    .collect(),
                schema: Some(g.describe()),
            }));
        }
        let escaping = meet.intersection(&ux.complement());
        let point = self
            .points_for(net)
            .into_iter()
            .chain(std::iter::once(OneElem::Nat(
                escaping.min_nat().unwrap_or(0),
            )))
            .find(|&p| escaping.contains(p))
            .expect("nonempty difference has a representative");
        Ok(ConvergenceVerdict::no(Witness::MeetEscapes {
            point: point.to_string(),
            schema: g.describe(),
        }))
    }

    fn converges_topological(
        &self,
        net: &Net<OneElem>,
        x: OneElem,
        ideal: &Ideal,
        t: &OneTopology,
    ) -> Result<ConvergenceVerdict> {
        let horizon = self.net_horizon(net) + 1;
        let base = t.neighbourhoods(x, horizon);
        for u in &base {
            if !self.eventually_in(net, u, ideal)? {
                return Ok(ConvergenceVerdict::no(Witness::Escapes {
                    set: u.render(),
                    level: self.render_level(net, u)?,
                }));
            }
        }
        Ok(ConvergenceVerdict::yes(Witness::AllOpens {
            checked: base.len(),
        }))
    }

    fn gi_family(&self, net: &Net<OneElem>, ideal: &Ideal) -> Result<OneFamily> {
        let h = self.net_horizon(net);
        let nats = self.bound_of(h, |n| self.fin_eventual(net, &[OneElem::Nat(n)], ideal))?;
        let pairs = self.bound_of(h, |n| {
            self.fin_eventual(net, &[OneElem::A, OneElem::Nat(n)], ideal)
        })?;
        Ok(OneFamily {
            nats,
            pairs,
            a: self.fin_eventual(net, &[OneElem::A], ideal)?,
            top: self.fin_eventual(net, &[OneElem::Top], ideal)?,
        })
    }

    fn is_gi_liminf(
        &self,
        net: &Net<OneElem>,
        x: OneElem,
        ideal: &Ideal,
    ) -> Result<ConvergenceVerdict> {
        let gis = self.converges_gis(net, x, ideal)?;
        if !gis.holds {
            return Ok(gis);
        }
        let g = self.gi_family(net, ideal)?;
        if g.meet().contains(x) {
            return Ok(gis);
        }
        let h = self.net_horizon(net).max(x.nat().unwrap_or(0)) + 1;
        let f: OneFinSet = g
            .members_up_to(h)
            .into_iter()
            .find(|f| !f.up().contains(x))
            .expect("a member excludes x when the meet does");
        Ok(ConvergenceVerdict::no(Witness::LowerBound {
            fin: self.render_fin(&f),
            level: self.render_level(net, &f.up())?,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::{IdealKind, IndexDcpo, IndexSet, OmegaSet, Track};
    use OneElem::*;

    fn example_net() -> Net<OneElem> {
        Net::omega(vec![Track::Ascend, Track::Const(A)]).unwrap()
    }

    fn ideal(kind: IdealKind) -> Ideal {
        Ideal::new(kind, IndexDcpo::Omega).unwrap()
    }

    #[test]
    fn level_sets_of_the_interleaved_net() {
        let d = ExampleOne;
        let net = example_net();
        let up5 = OneSet::from_elems(&[Nat(5)]).up();
        let want = OmegaSet::residues(2, [1]).union(&OmegaSet::finite([0, 2, 4, 6, 8]));
        assert_eq!(d.level_set(&net, &up5).unwrap(), IndexSet::Omega(want));
        let up_a5 = OneSet::from_elems(&[A, Nat(5)]).up();
        assert_eq!(
            d.level_set(&net, &up_a5).unwrap(),
            IndexSet::Omega(OmegaSet::finite([0, 2, 4, 6, 8]))
        );
        let c = Net::constant(Nat(3));
        assert!(d
            .level_set(&c, &up5.union(&OneSet::from_elems(&[Nat(3)])))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn interleaved_net_gis_not_is() {
        let d = ExampleOne;
        let net = example_net();
        let i = ideal(IdealKind::Eventual);
        let gis = d.converges_gis(&net, A, &i).unwrap();
        assert!(gis.holds);
        match &gis.witness {
            Witness::Family { schema, members } => {
                assert_eq!(schema.as_deref(), Some("{a, n} for all n"));
                assert_eq!(members[0], vec!["0".to_string(), "a".into()]);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(!d.converges_is(&net, A, &i).unwrap().holds);
        assert_eq!(d.gi_family(&net, &i).unwrap(), OneFamily::PAIRS_WITH_A);
    }

    #[test]
    fn interleaved_net_topologies() {
        let d = ExampleOne;
        let net = example_net();
        let i = ideal(IdealKind::Eventual);
        assert!(
            d.converges_topological(&net, A, &i, &OneTopology::Scott)
                .unwrap()
                .holds
        );
        assert!(
            !d.converges_topological(&net, A, &i, &OneTopology::Lawson)
                .unwrap()
                .holds
        );
        assert!(d.is_gi_liminf(&net, A, &i).unwrap().holds);
        assert_eq!(d.gi_limits(&net, &i).unwrap(), vec![A]);
    }

    #[test]
    fn ascending_chain_converges_to_top() {
        let d = ExampleOne;
        let net = Net::omega(vec![Track::Ascend]).unwrap();
        let i = ideal(IdealKind::DensityZero);
        let is = d.converges_is(&net, Top, &i).unwrap();
        assert!(is.holds);
        assert_eq!(
            is.witness,
            Witness::Directed {
                set: vec!["0..".into()],
                sup: "top".into()
            }
        );
        assert!(d.converges_gis(&net, Top, &i).unwrap().holds);
        assert!(d.converges_gis(&net, A, &i).unwrap().holds);
        assert!(!d.is_gi_liminf(&net, A, &i).unwrap().holds);
        assert!(
            d.converges_topological(&net, Top, &i, &OneTopology::Scott)
                .unwrap()
                .holds
        );
        assert!(
            d.converges_topological(&net, Top, &i, &OneTopology::Lawson)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn constant_nets() {
        let d = ExampleOne;
        for c in [Nat(0), Nat(4), A, Top] {
            let net = Net::constant(c);
            for kind in [IdealKind::Eventual, IdealKind::FiniteSets] {
                let i = ideal(kind);
                assert!(d.converges_is(&net, c, &i).unwrap().holds);
                assert!(d.is_gi_liminf(&net, c, &i).unwrap().holds);
                assert!(
                    d.converges_topological(&net, c, &i, &OneTopology::Lawson)
                        .unwrap()
                        .holds
                );
            }
        }
        let net = Net::constant(Nat(2));
        let v = d
            .is_gi_liminf(&net, Nat(1), &ideal(IdealKind::Eventual))
            .unwrap();
        assert!(!v.holds);
    }
}
