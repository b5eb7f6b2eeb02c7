//! Where the counts M come from.

use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::permcount::{brute_force_m, closed_m01, CountTable, EnumConfig, HypermapSpec};

/// A supplier of weighted counts M_{g,n}^{[a]}(b⃗).
pub trait CountSource: Sync {
    fn m(&self, spec: &HypermapSpec) -> Result<Rat>;

    /// Short label for reports.
    fn label(&self) -> String;
}

impl CountSource for CountTable {
    fn m(&self, spec: &HypermapSpec) -> Result<Rat> {
        self.get(spec).ok_or_else(|| Error::Missing(format!("M for {spec:?}")))
    }

    fn label(&self) -> String {
        "table".into()
    }
}

/// Brute-force enumeration, memoized; (0,1) uses the closed formula.
#[derive(Debug, Default)]
pub struct BruteForce {
    cfg: EnumConfig,
    cache: Mutex<BTreeMap<HypermapSpec, Rat>>,
}

impl BruteForce {
    pub fn new(cfg: EnumConfig) -> Self {
        BruteForce { cfg, cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn config(&self) -> EnumConfig {
        self.cfg
    }
}

impl CountSource for BruteForce {
    fn m(&self, spec: &HypermapSpec) -> Result<Rat> {
        if let Some(v) = self.cache.lock().expect("count cache poisoned").get(spec) {
            return Ok(v.clone());
        }
        // the count is symmetric in b⃗, so one ordering is enough
        let mut key = spec.clone();
        key.b.sort_unstable();
        let cached = self.cache.lock().expect("count cache poisoned").get(&key).cloned();
        let v = match cached {
            Some(v) => v,
            None => brute_force_m(&key, &self.cfg)?,
        };
        let mut c = self.cache.lock().expect("count cache poisoned");
        c.insert(key, v.clone());
        c.insert(spec.clone(), v.clone());
        Ok(v)
    }

    fn label(&self) -> String {
        format!("brute-force(degree ≤ {})", self.cfg.degree_bound)
    }
}

/// Closed generalized-Catalan values; only (0,1) is covered.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClosedOneFace;

impl CountSource for ClosedOneFace {
    fn m(&self, spec: &HypermapSpec) -> Result<Rat> {
        match (spec.g, spec.b.as_slice()) {
            (0, &[b]) if b >= 1 => Ok(closed_m01(spec.a, b)),
            _ => Err(Error::Missing(format!("closed form for {spec:?}"))),
        }
    }

    fn label(&self) -> String {
        "closed-form".into()
    }
}

/// Wraps a source and overrides a single entry — a negative control.
pub struct WithFault<'a> {
    pub inner: &'a dyn CountSource,
    pub spec: HypermapSpec,
    pub value: Rat,
}

impl CountSource for WithFault<'_> {
    fn m(&self, spec: &HypermapSpec) -> Result<Rat> {
        if *spec == self.spec {
            return Ok(self.value.clone());
        }
        self.inner.m(spec)
    }

    fn label(&self) -> String {
        format!("{} with fault at {:?}", self.inner.label(), self.spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::permcount::Provenance;

    #[test]
    fn table_reports_missing() {
        let mut t = CountTable::new();
        let s = HypermapSpec::new(2, 0, vec![2]);
        t.insert(s.clone(), rat(1, 2), Provenance::ClosedForm).unwrap();
        assert_eq!(t.m(&s).unwrap(), rat(1, 2));
        let err = t.m(&HypermapSpec::new(2, 0, vec![4])).unwrap_err();
        assert!(matches!(err, Error::Missing(ref m) if m.contains("b: [4]")));
    }

    #[test]
    fn brute_force_is_order_independent() {
        let bf = BruteForce::default();
        let x = bf.m(&HypermapSpec::new(2, 0, vec![1, 2, 3])).unwrap();
        let y = bf.m(&HypermapSpec::new(2, 0, vec![3, 1, 2])).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn fault_overrides_one_entry() {
        let bf = BruteForce::default();
        let s = HypermapSpec::new(2, 1, vec![4]);
        let f = WithFault { inner: &bf, spec: s.clone(), value: rat_int(7) };
        assert_eq!(f.m(&s).unwrap(), rat_int(7));
        assert_eq!(f.m(&HypermapSpec::new(2, 1, vec![2])).unwrap(), bf.m(&HypermapSpec::new(2, 1, vec![2])).unwrap());
    }
}
