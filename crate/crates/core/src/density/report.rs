use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DensityParams, FiberRecord};
use crate::elliptic::{naive_height, Point};

fn as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn from_string<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DensityReport {
    pub params: DensityParams,
    pub fibers_attempted: usize,
    pub fibers_certified: usize,
    pub fibers_torsion: usize,
    pub fibers_skipped: usize,
    pub points_emitted: usize,
    /// Largest naive height of an emitted point.
    #[serde(serialize_with = "as_string", deserialize_with = "from_string")]
    pub max_height_seen: BigInt,
    pub fibers: Vec<FiberRecord>,
}

impl DensityReport {
    pub fn from_fibers(params: DensityParams, fibers: Vec<FiberRecord>) -> Self {
        let mut rep = DensityReport {
            params,
            fibers_attempted: fibers.len(),
            fibers_certified: 0,
            fibers_torsion: 0,
            fibers_skipped: 0,
            points_emitted: 0,
            max_height_seen: BigInt::zero(),
            fibers: vec![],
        };
        for fr in &fibers {
            if fr.certified() {
                rep.fibers_certified += 1;
            } else if fr
                .attempts
                .iter()
                .any(|a| matches!(a.verdict, super::Verdict::Skipped(_)))
            {
                rep.fibers_skipped += 1;
            } else {
                rep.fibers_torsion += 1;
            }
            rep.points_emitted += fr.points.len();
            for (_, p) in &fr.points {
                rep.max_height_seen = rep.max_height_seen.clone().max(naive_height(p));
            }
        }
        rep.fibers = fibers;
        rep
    }

    /// All emitted points as `(t, point, k)`.
    pub fn points(&self) -> impl Iterator<Item = (&crate::exactmath::Rat, &Point, u32)> {
        self.fibers
            .iter()
            .flat_map(|fr| fr.points.iter().map(move |(k, p)| (&fr.t, p, *k)))
    }

    /// CSV with header `b,x,y,k`; the point at infinity is written `inf,inf`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("b,x,y,k\n");
        for (t, p, k) in self.points() {
            match p {
                Point::Affine(x, y) => writeln!(out, "{t},{x},{y},{k}").unwrap(),
                Point::Infinity => writeln!(out, "{t},inf,inf,{k}").unwrap(),
            }
        }
        out
    }

    /// Number of data rows [`Self::to_csv`] writes.
    pub fn csv_rows(&self) -> usize {
        self.fibers.iter().map(|fr| fr.points.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}
