//! Shared fixtures for the benchmarks.

use fdwave_core::fractional::{
    Fundamental, LowerTerm, ModeProblem, MultiTermOrders, NonlocalData, NonlocalPoint,
};
use fdwave_core::grid::TimeGrid;
use fdwave_core::special::SeriesControl;

pub fn orders(alpha: f64, terms: &[(f64, f64)]) -> MultiTermOrders {
    let terms = terms
        .iter()
        .map(|&(coefficient, order)| LowerTerm { coefficient, order })
        .collect();
    MultiTermOrders::new(alpha, terms).expect("valid orders")
}

pub fn fundamental(alpha: f64, terms: &[(f64, f64)]) -> Fundamental {
    Fundamental::new(&orders(alpha, terms), SeriesControl::default()).expect("valid fundamental")
}

pub fn two_point_condition() -> NonlocalData {
    NonlocalData::new(vec![
        NonlocalPoint { mu: 0.4, time: 0.5 },
        NonlocalPoint {
            mu: -0.3,
            time: 1.0,
        },
    ])
    .expect("valid nonlocal data")
}

pub fn grid(nodes: usize) -> TimeGrid {
    let nl = two_point_condition();
    TimeGrid::containing(nl.horizon(), &nl.times(), nodes).expect("grid")
}

pub fn mode(grid: &TimeGrid, lambda: f64) -> ModeProblem {
    let forcing = grid.nodes().iter().map(|t| (3.0 * t).sin() + t).collect();
    ModeProblem {
        index: 0,
        lambda,
        forcing,
    }
}
