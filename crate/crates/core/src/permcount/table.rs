use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::hypermap::HypermapSpec;
use crate::arith::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BruteForce,
    ClosedForm,
    Toprec,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::BruteForce => "brute-force",
            Provenance::ClosedForm => "closed-form",
            Provenance::Toprec => "toprec",
        })
    }
}

/// One exported row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub a: u32,
    pub g: u32,
    pub n: usize,
    pub b: Vec<u32>,
    pub value_num: String,
    pub value_den: String,
    pub provenance: Provenance,
}

/// Write-once table of exact counts keyed by type.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CountTable {
    entries: BTreeMap<HypermapSpec, (Rat, Provenance)>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a value; a repeated key must carry the same value.
    pub fn insert(&mut self, spec: HypermapSpec, value: Rat, provenance: Provenance) -> Result<()> {
        if let Some((old, _)) = self.entries.get(&spec) {
            if *old != value {
                return Err(Error::Invariant(format!("conflicting values for {spec:?}: {old} vs {value}")));
            }
            return Ok(());
        }
        self.entries.insert(spec, (value, provenance));
        Ok(())
    }

    /// Entry value; types with `a ∤ Σb` are zero without being stored.
    pub fn get(&self, spec: &HypermapSpec) -> Option<Rat> {
        if spec.hyperedges().is_none() {
            return Some(Rat::from_integer(0.into()));
        }
        self.entries.get(spec).map(|(v, _)| v.clone())
    }

    pub fn provenance(&self, spec: &HypermapSpec) -> Option<Provenance> {
        self.entries.get(spec).map(|(_, p)| *p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HypermapSpec, &Rat, Provenance)> {
        self.entries.iter().map(|(s, (v, p))| (s, v, *p))
    }

    pub fn records(&self) -> Vec<CountRecord> {
        self.iter()
            .map(|(s, v, p)| CountRecord {
                a: s.a,
                g: s.g,
                n: s.n(),
                b: s.b.clone(),
                value_num: v.numer().to_string(),
                value_den: v.denom().to_string(),
                provenance: p,
            })
            .collect()
    }

    /// CSV with columns a, g, n, b1..bN, value_num, value_den, provenance; N is the largest
    /// face count present and shorter rows leave trailing perimeter cells empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let width = self.entries.keys().map(HypermapSpec::n).max().unwrap_or(1);
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["a".to_string(), "g".into(), "n".into()];
        header.extend((1..=width).map(|i| format!("b{i}")));
        header.extend(["value_num".into(), "value_den".into(), "provenance".into()]);
        w.write_record(&header)?;
        for r in self.records() {
            let mut row = vec![r.a.to_string(), r.g.to_string(), r.n.to_string()];
            row.extend((0..width).map(|i| r.b.get(i).map(u32::to_string).unwrap_or_default()));
            row.extend([r.value_num, r.value_den, r.provenance.to_string()]);
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.records())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let records: Vec<CountRecord> = serde_json::from_str(s)?;
        let mut t = CountTable::new();
        for r in records {
            let num = r.value_num.parse().map_err(|_| Error::Invalid(format!("bad numerator {}", r.value_num)))?;
            let den = r.value_den.parse().map_err(|_| Error::Invalid(format!("bad denominator {}", r.value_den)))?;
            t.insert(HypermapSpec::new(r.a, r.g, r.b), Rat::new(num, den), r.provenance)?;
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn write_once_and_round_trip() {
        let mut t = CountTable::new();
        let s = HypermapSpec::new(3, 0, vec![5, 10]);
        t.insert(s.clone(), rat(336, 5), Provenance::BruteForce).unwrap();
        t.insert(s.clone(), rat(336, 5), Provenance::ClosedForm).unwrap();
        assert!(t.insert(s.clone(), rat(1, 5), Provenance::BruteForce).is_err());
        t.insert(HypermapSpec::new(2, 0, vec![2]), rat(1, 2), Provenance::ClosedForm).unwrap();
        assert_eq!(CountTable::from_json(&t.to_json().unwrap()).unwrap(), t);
        assert_eq!(t.get(&HypermapSpec::new(3, 0, vec![4])), Some(rat(0, 1)));

        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), "a,g,n,b1,b2,value_num,value_den,provenance");
        assert!(text.contains("3,0,2,5,10,336,5,brute-force"));
        assert!(text.contains("2,0,1,2,,1,2,closed-form"));
    }
}
