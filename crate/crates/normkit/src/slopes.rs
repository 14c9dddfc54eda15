//! Slopes on one-vertex torus boundary components.
//!
//! Arc type `k` on a one-vertex torus is the normal arc that misses boundary edge `k`.
//! A slope `(p, q)` is the class `p*E0 + q*E1` in the basis of the first two boundary
//! edges; it meets the edges `(|q|, |p|, |p*b - q*a|)` times where `E2 = a*E0 + b*E1`.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tri::{BoundaryComponent, TorusFrame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    pub boundary: usize,
    pub p: i64,
    pub q: i64,
    pub arcs: [u64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveSlope {
    Trivial,
    Slope(Slope),
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}@B{}", self.p, self.q, self.boundary)
    }
}

fn canonical_sign(p: i64, q: i64) -> (i64, i64) {
    if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

/// Edge weights of `(p, q)` in a frame.
pub fn weights(frame: &TorusFrame, p: i64, q: i64) -> [u64; 3] {
    [q.unsigned_abs(), p.unsigned_abs(), (p * frame.b - q * frame.a).unsigned_abs()]
}

pub fn arcs_from_weights(w: [u64; 3]) -> [u64; 3] {
    let half = (w[0] + w[1] + w[2]) / 2;
    [half - w[0], half - w[1], half - w[2]]
}

pub fn weights_from_arcs(z: [u64; 3]) -> [u64; 3] {
    let s = z[0] + z[1] + z[2];
    [s - z[0], s - z[1], s - z[2]]
}

impl Slope {
    pub fn new(comp: &BoundaryComponent, p: i64, q: i64) -> Result<Slope> {
        let frame = comp.torus()?;
        if p.gcd(&q) != 1 {
            return Err(Error::TrivialSlope);
        }
        let (p, q) = canonical_sign(p, q);
        let arcs = arcs_from_weights(weights(frame, p, q));
        Ok(Slope { boundary: comp.id, p, q, arcs })
    }

    /// The slope of boundary edge `k` (0, 1 or 2).
    pub fn edge(comp: &BoundaryComponent, k: usize) -> Result<Slope> {
        let frame = comp.torus()?;
        match k {
            0 => Slope::new(comp, 1, 0),
            1 => Slope::new(comp, 0, 1),
            _ => Slope::new(comp, frame.a, frame.b),
        }
    }

    pub fn length(&self) -> u64 {
        weights_from_arcs(self.arcs).iter().sum()
    }

    pub fn weights(&self) -> [u64; 3] {
        weights_from_arcs(self.arcs)
    }

    /// Parses `p/q` (boundary supplied) or `p/q@Bk`.
    pub fn parse(s: &str, boundary: Option<usize>) -> Result<(i64, i64, usize)> {
        let bad = || Error::Parse(format!("bad slope '{s}'"));
        let (frac, b) = match s.split_once('@') {
            Some((f, b)) => {
                let b = b.strip_prefix('B').ok_or_else(bad)?;
                (f, b.parse::<usize>().map_err(|_| bad())?)
            }
            None => (s, boundary.ok_or_else(bad)?),
        };
        let (p, q) = frac.split_once('/').ok_or_else(bad)?;
        Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?, b))
    }
}

pub fn slope_length(g: &Slope) -> u64 {
    g.length()
}

pub fn slope_from_curve(arcs: [u64; 3], comp: &BoundaryComponent) -> Result<CurveSlope> {
    let frame = comp.torus()?;
    let m = *arcs.iter().min().expect("three");
    if m > 0 {
        return if arcs == [1, 1, 1] { Ok(CurveSlope::Trivial) } else { Err(Error::DisconnectedCurve) };
    }
    let w = weights_from_arcs(arcs);
    let (w0, w1) = (w[0] as i64, w[1] as i64);
    if w0.gcd(&w1) != 1 {
        return Err(Error::DisconnectedCurve);
    }
    let (p, q) = if w1 == 0 {
        (0, 1)
    } else {
        let p = w1;
        let hit = [w0, -w0].into_iter().find(|&q| (p * frame.b - q * frame.a).unsigned_abs() == w[2]);
        (p, hit.ok_or(Error::DisconnectedCurve)?)
    };
    let s = Slope::new(comp, p, q)?;
    if s.arcs != arcs {
        return Err(Error::DisconnectedCurve);
    }
    Ok(CurveSlope::Slope(s))
}

pub fn slope_distance(a: &Slope, b: &Slope) -> Result<u64> {
    if a.boundary != b.boundary {
        return Err(Error::BoundaryMismatch);
    }
    Ok((a.p * b.q - a.q * b.p).unsigned_abs())
}

/// The slope whose representative sums with `g`'s to copies of the vertex link.
pub fn complementary_slope(g: &Slope, comp: &BoundaryComponent) -> Result<Slope> {
    let m = *g.arcs.iter().max().expect("three");
    let arcs = [m - g.arcs[0], m - g.arcs[1], m - g.arcs[2]];
    match slope_from_curve(arcs, comp)? {
        CurveSlope::Slope(s) => Ok(s),
        CurveSlope::Trivial => Err(Error::TrivialSlope),
    }
}

/// All slopes with `slope_length <= bound`, ordered by length then `(p, q)`.
pub fn enumerate_short_slopes(comp: &BoundaryComponent, bound: &BigRational) -> Result<Vec<Slope>> {
    comp.torus()?;
    if bound.is_negative() {
        return Ok(vec![]);
    }
    let c = bound.floor().to_integer().to_u64().unwrap_or(u64::MAX);
    let mut out = Vec::new();
    let visit = |p: i64, m: i64, out: &mut Vec<Slope>| -> Result<()> {
        let qs: Vec<i64> = if p > 0 && m > 0 { vec![m, -m] } else { vec![m] };
        for q in qs {
            let s = Slope::new(comp, p, q)?;
            if s.length() <= c {
                out.push(s);
            }
        }
        Ok(())
    };
    // Stern-Brocot over (p, |q|); every descendant has a larger p + |q|, which bounds the length below.
    for (p, m) in [(0i64, 1i64), (1, 0)] {
        visit(p, m, &mut out)?;
    }
    let mut stack = vec![((0i64, 1i64), (1i64, 0i64))];
    while let Some((l, r)) = stack.pop() {
        let mid = (l.0 + r.0, l.1 + r.1);
        if (mid.0 + mid.1) as u64 > c {
            continue;
        }
        visit(mid.0, mid.1, &mut out)?;
        stack.push((l, mid));
        stack.push((mid, r));
    }
    out.sort_by_key(|s| (s.length(), s.p, s.q));
    Ok(out)
}
