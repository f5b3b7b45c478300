//! Curve data for the eight figure panels.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::catalog::{caputo, CatalogEntry, FunctionKind};
use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;

pub const DEFAULT_ALPHAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
pub const DEFAULT_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    F1a,
    F1b,
    F2a,
    F2b,
    F3a,
    F3b,
    F4,
    F5,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::F1a,
        FigureId::F1b,
        FigureId::F2a,
        FigureId::F2b,
        FigureId::F3a,
        FigureId::F3b,
        FigureId::F4,
        FigureId::F5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::F1a => "1a",
            FigureId::F1b => "1b",
            FigureId::F2a => "2a",
            FigureId::F2b => "2b",
            FigureId::F3a => "3a",
            FigureId::F3b => "3b",
            FigureId::F4 => "4",
            FigureId::F5 => "5",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }

    /// Function family and plotted interval of the panel.
    pub fn spec(self) -> (CatalogEntry, f64, f64) {
        let e = CatalogEntry::new;
        match self {
            FigureId::F1a => (e(FunctionKind::SinPow), 0.0, TAU),
            FigureId::F1b => (e(FunctionKind::CosPow), 0.0, TAU),
            // arcsin stops short of its branch point at 1
            FigureId::F2a => (e(FunctionKind::ArcsinPow), 0.0, 0.99),
            FigureId::F2b => (e(FunctionKind::ArctanPow), 0.0, TAU),
            FigureId::F3a => (e(FunctionKind::ExpPow).with_n(2), 0.0, 3.0),
            FigureId::F3b => (e(FunctionKind::ExpPow).with_n(4), 0.0, 3.0),
            FigureId::F4 => (e(FunctionKind::Lorentzian), 0.0, 4.0),
            FigureId::F5 => (
                e(FunctionKind::ShiftedPoly).with_n(2).with_xi(1.0),
                0.0,
                2.0,
            ),
        }
    }

    /// The plotted function's first derivative, written out per panel.
    pub fn classical_derivative(self, x: f64) -> f64 {
        match self {
            FigureId::F1a => x.cos(),
            FigureId::F1b => -x.sin(),
            FigureId::F2a => 1.0 / (1.0 - x * x).sqrt(),
            FigureId::F2b => 1.0 / (1.0 + x * x),
            FigureId::F3a => -2.0 * x * (-x * x).exp(),
            FigureId::F3b => -4.0 * x.powi(3) * (-x.powi(4)).exp(),
            FigureId::F4 => -(1.0 / PI) * x / (x * x + 0.25).powi(2),
            FigureId::F5 => 2.0 * (x + 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    pub x: f64,
    pub alpha: f64,
    pub value: f64,
}

/// `points` evenly spaced abscissae including both ends.
pub fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| {
                if i + 1 == points {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (points - 1) as f64
                }
            })
            .collect(),
    }
}

/// Rows in `(x, alpha)` order.
pub fn figure_rows(
    id: FigureId,
    alphas: &[f64],
    points: usize,
    cfg: &PrecisionConfig,
) -> Result<Vec<FigureRow>> {
    let (entry, lo, hi) = id.spec();
    let mut rows = Vec::with_capacity(points * alphas.len());
    for x in grid(lo, hi, points) {
        for &alpha in alphas {
            let value = caputo(&entry.request(alpha, x), cfg)?.value;
            rows.push(FigureRow { x, alpha, value });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for id in FigureId::ALL {
            assert_eq!(FigureId::parse(id.name()).unwrap(), id);
        }
        assert!(matches!(FigureId::parse("6"), Err(Error::UnknownFigure(_))));
    }

    #[test]
    fn caption_rows() {
        let cfg = PrecisionConfig::default();
        let rows = figure_rows(FigureId::F1a, &[0.5], 3, &cfg).unwrap();
        assert_eq!(rows[0].value, 0.0);
        let rows = figure_rows(FigureId::F3a, &[0.0], 4, &cfg).unwrap();
        assert!((rows[1].value - ((-1f64).exp() - 1.0)).abs() < 1e-16);
    }

    #[test]
    fn lorentzian_order_one_is_derivative() {
        let cfg = PrecisionConfig::default();
        for r in figure_rows(FigureId::F4, &[1.0], 21, &cfg).unwrap() {
            let d = FigureId::F4.classical_derivative(r.x);
            assert!((r.value - d).abs() <= 1e-14 * d.abs().max(1.0));
        }
    }

    #[test]
    fn grid_ends() {
        let g = grid(0.0, TAU, 101);
        assert_eq!((g[0], g[100]), (0.0, TAU));
    }
}
