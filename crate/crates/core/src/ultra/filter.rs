use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::label::Label;
use crate::{Error, Result};

/// A filter on a finite index set, with subsets stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterOnX {
    pub points: Vec<Label>,
    /// Member sets in increasing bitmask order.
    pub members: Vec<u32>,
    pub ultra: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFilter {
    #[serde(rename = "X")]
    pub x: Vec<Label>,
    pub members: Vec<Vec<Label>>,
}

fn index_labels(n: usize) -> Vec<Label> {
    (0..n).map(Label::from).collect()
}

impl FilterOnX {
    /// Checks properness and closure under intersection and supersets.
    pub fn new(points: Vec<Label>, members: Vec<u32>) -> Result<Self> {
        let n = points.len();
        if n > 31 {
            return Err(Error::BoundsExceeded(format!("index set of size {n}")));
        }
        let full = (1u32 << n) - 1;
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&s| s & !full != 0) {
            return Err(Error::ImproperFilter("a member mentions a point outside X".into()));
        }
        if members.is_empty() {
            return Err(Error::ImproperFilter("a filter must contain X".into()));
        }
        if members.contains(&0) {
            return Err(Error::ImproperFilter("the empty set is a member".into()));
        }
        let has = |s: u32| members.binary_search(&s).is_ok();
        for &a in &members {
            for &b in &members {
                if !has(a & b) {
                    return Err(Error::ImproperFilter(format!(
                        "not closed under intersection at {a:#b} and {b:#b}"
                    )));
                }
            }
            // Supersets: adding any single point must stay inside.
            for p in 0..n {
                if !has(a | (1 << p)) {
                    return Err(Error::ImproperFilter(format!("not closed under supersets at {a:#b}")));
                }
            }
        }
        let ultra = (0..=full).all(|s| has(s) || has(full & !s));
        Ok(FilterOnX { points, members, ultra })
    }

    /// All supersets of `kernel`.
    pub fn generated_by(points: Vec<Label>, kernel: u32) -> Result<Self> {
        let n = points.len();
        let full = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
        let members = (0..=full).filter(|&s| s & kernel == kernel).collect();
        FilterOnX::new(points, members)
    }

    pub fn principal(n: usize, at: usize) -> Result<Self> {
        if at >= n {
            return Err(Error::InvalidInput(format!(
                "point {at} is outside an index set of size {n}"
            )));
        }
        FilterOnX::generated_by(index_labels(n), 1 << at)
    }

    /// The filter `{X}`; reduced products over it are direct products.
    pub fn trivial(n: usize) -> Result<Self> {
        FilterOnX::generated_by(index_labels(n), (1u32 << n) - 1)
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, set: u32) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// Intersection of all members; it is itself a member.
    pub fn kernel(&self) -> u32 {
        self.members.iter().fold(u32::MAX, |acc, &s| acc & s)
    }

    pub fn principal_point(&self) -> Option<usize> {
        let k = self.kernel();
        (k.count_ones() == 1).then(|| k.trailing_zeros() as usize)
    }

    pub fn to_raw(&self) -> RawFilter {
        RawFilter {
            x: self.points.clone(),
            members: self
                .members
                .iter()
                .map(|&s| {
                    (0..self.size())
                        .filter(|&p| s & (1 << p) != 0)
                        .map(|p| self.points[p].clone())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_raw(raw: &RawFilter) -> Result<Self> {
        let mut members = Vec::new();
        for m in &raw.members {
            let mut bits = 0u32;
            for l in m {
                let p = raw
                    .x
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| Error::ImproperFilter(format!("`{l}` is not in X")))?;
                bits |= 1 << p;
            }
            members.push(bits);
        }
        FilterOnX::new(raw.x.clone(), members)
    }
}

/// Every filter on `{0, .., n-1}`: one per nonempty kernel.
pub fn enumerate_filters(n: usize, caps: &Caps) -> Result<Vec<FilterOnX>> {
    if n > caps.max_index_set {
        return Err(Error::BoundsExceeded(format!(
            "index set of size {n} exceeds the cap of {}",
            caps.max_index_set
        )));
    }
    (1u32..(1 << n))
        .map(|k| FilterOnX::generated_by(index_labels(n), k))
        .collect()
}

/// The ultrafilters on `{0, .., n-1}`; on a finite set these are the
/// principal ones.
pub fn enumerate_ultrafilters(n: usize) -> Result<Vec<FilterOnX>> {
    enumerate_ultrafilters_with(n, &Caps::default())
}

pub fn enumerate_ultrafilters_with(n: usize, caps: &Caps) -> Result<Vec<FilterOnX>> {
    if n > caps.max_index_set {
        return Err(Error::BoundsExceeded(format!(
            "index set of size {n} exceeds the cap of {}",
            caps.max_index_set
        )));
    }
    (0..n).map(|x| FilterOnX::principal(n, x)).collect()
}

impl Serialize for FilterOnX {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FilterOnX {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FilterOnX::from_raw(&RawFilter::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
