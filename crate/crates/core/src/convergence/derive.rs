//! Topologies induced by a convergence notion over a finite class of nets.

use serde::{Deserialize, Serialize};

use crate::bits::ElemSet;
use crate::corpus::generate_all_posets;
use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::poset::FinitePoset;
use crate::topology::{FiniteTopology, TopologyKind};

use super::{Ideal, IdealKind, IndexDcpo, Net, NetConvergence, Track};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Is,
    Gis,
    Gi,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Is => "is",
            Mode::Gis => "gis",
            Mode::Gi => "gi",
        }
    }
}

/// The nets a derived topology quantifies over: every net on a directed
/// finite index with at most `max_index_size` points, and every periodic net
/// on `ω` with period at most `omega_max_period`, all with the same kind of
/// ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetClassConfig {
    pub max_index_size: usize,
    pub omega_max_period: usize,
    pub ideal: IdealKind,
}

impl Default for NetClassConfig {
    fn default() -> Self {
        NetClassConfig {
            max_index_size: 4,
            omega_max_period: 3,
            ideal: IdealKind::Eventual,
        }
    }
}

impl NetClassConfig {
    /// Only nets on finite index posets.
    pub fn finite_index_only(max_index_size: usize) -> Self {
        NetClassConfig {
            max_index_size,
            omega_max_period: 0,
            ideal: IdealKind::Eventual,
        }
    }
}

/// Directed posets with at most `max` points: every poset on `k - 1` points
/// with a new top added, up to isomorphism.
pub fn directed_index_posets(max: usize) -> Result<Vec<FinitePoset>> {
    let mut out = Vec::new();
    for k in 1..=max {
        for (i, q) in generate_all_posets(k - 1)?.into_iter().enumerate() {
            let names: Vec<String> = (0..k).map(|j| j.to_string()).collect();
            let top = k - 1;
            let p = FinitePoset::from_relation(&format!("j{k}_{i}"), names, |a, b| {
                b == top || (a < top && b < top && q.le(a, b))
            })?;
            out.push(p);
        }
    }
    Ok(out)
}

fn all_maps(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(k as u32)).map(move |mut code| {
        (0..k)
            .map(|_| {
                let v = code % n;
                code /= n;
                v
            })
            .collect()
    })
}

/// Every net in the class with values in `0..n`.
pub fn net_class(n: usize, cfg: &NetClassConfig) -> Result<Vec<Net<usize>>> {
    if cfg.max_index_size == 0 && cfg.omega_max_period == 0 {
        return Err(Error::NetClassTooSmall);
    }
    let mut nets = Vec::new();
    for p in directed_index_posets(cfg.max_index_size)? {
        let k = p.len();
        let index = IndexDcpo::finite(p)?;
        for values in all_maps(n, k) {
            nets.push(Net::finite(&index, values)?);
        }
    }
    for period in 1..=cfg.omega_max_period {
        for values in all_maps(n, period) {
            nets.push(Net::omega(values.into_iter().map(Track::Const).collect())?);
        }
    }
    Ok(nets)
}

/// `{U : every net in the class converging in `mode` to some x ∈ U has
/// {j : x_j ∉ U} in the ideal}`.
pub fn derive_convergence_topology(
    d: &FiniteDomain,
    mode: Mode,
    cfg: &NetClassConfig,
    exec: Exec,
) -> Result<FiniteTopology> {
    d.check_enumerable()?;
    let n = d.len();
    let nets = net_class(n, cfg)?;
    let subsets: Vec<ElemSet> = ElemSet::full(n).subsets().collect();
    let refuted = par::map(exec, &nets, |net| -> Result<Vec<ElemSet>> {
        let ideal = Ideal::for_net(cfg.ideal, net)?;
        let limits = match mode {
            Mode::Is => d.limits_by(net, &ideal, |d, n, x, i| d.converges_is(n, x, i))?,
            Mode::Gis => d.limits_by(net, &ideal, |d, n, x, i| d.converges_gis(n, x, i))?,
            Mode::Gi => d.limits_by(net, &ideal, |d, n, x, i| d.is_gi_liminf(n, x, i))?,
        };
        let mut bad = Vec::new();
        if limits.is_empty() {
            return Ok(bad);
        }
        for &u in &subsets {
            if u.meets(limits) && !d.eventually_in(net, &u, &ideal)? {
                bad.push(u);
            }
        }
        Ok(bad)
    });
    let mut open = vec![true; subsets.len()];
    for bad in refuted {
        for u in bad? {
            open[u.0 as usize] = false;
        }
    }
    let opens = subsets.into_iter().filter(|u| open[u.0 as usize]);
    FiniteTopology::new(n, TopologyKind::Derived, opens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{chain, diamond};
    use crate::topology::{lawson_topology, scott_topology};

    #[test]
    fn index_posets_are_directed() {
        let ps = directed_index_posets(4).unwrap();
        assert_eq!(ps.len(), 1 + 1 + 2 + 5);
        for p in &ps {
            assert!(IndexDcpo::finite(p.clone()).is_ok());
        }
    }

    #[test]
    fn class_needs_constant_nets() {
        let cfg = NetClassConfig {
            max_index_size: 0,
            omega_max_period: 0,
            ideal: IdealKind::Eventual,
        };
        assert_eq!(net_class(3, &cfg).unwrap_err(), Error::NetClassTooSmall);
        let cfg = NetClassConfig {
            max_index_size: 2,
            omega_max_period: 1,
            ideal: IdealKind::Eventual,
        };
        // 2 + 4 finite nets, 2 constant ω-nets.
        assert_eq!(net_class(2, &cfg).unwrap().len(), 8);
    }

    #[test]
    fn is_and_gis_give_scott() {
        let d = FiniteDomain::new(diamond()).unwrap();
        let sigma = scott_topology(&d).unwrap();
        let cfg = NetClassConfig::default();
        for mode in [Mode::Is, Mode::Gis] {
            let t = derive_convergence_topology(&d, mode, &cfg, Exec::Sequential).unwrap();
            assert!(t.same_opens(&sigma), "{mode:?}");
        }
    }

    #[test]
    fn gi_with_finite_index_nets_is_discrete() {
        let d = FiniteDomain::new(diamond()).unwrap();
        let t = derive_convergence_topology(
            &d,
            Mode::Gi,
            &NetClassConfig::finite_index_only(3),
            Exec::Parallel,
        )
        .unwrap();
        assert!(t.same_opens(&lawson_topology(&d).unwrap()));
    }

    #[test]
    fn gi_with_periodic_nets_misses_lawson_opens() {
        // Alternating bot, top: bot is a GI-limit, yet {bot} has an infinite
        // level set.
        let d = FiniteDomain::new(chain(2)).unwrap();
        let t =
            derive_convergence_topology(&d, Mode::Gi, &NetClassConfig::default(), Exec::Sequential)
                .unwrap();
        assert!(!t.is_open(ElemSet::singleton(0)));
        assert!(!lawson_topology(&d).unwrap().is_coarser_than(&t));
    }
}
