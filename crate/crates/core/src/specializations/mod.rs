//! Combinatorial models for the specializations `t = 0`, `t = 1` and
//! `q = t = 1`.

mod levande;
mod osp;
mod parking;
mod permutational;

pub use levande::{levande_map, LevandeArray};
pub use osp::{
    inv_generating_function, inv_stat, osp_enumerate, q_stirling, set_of, tes_t0,
    OrderedSetPartition,
};
pub use parking::{
    area, car_bars, cpf, park_analysis, tes_11, wt_alpha, DecoratedParkingFunction, ParkAnalysis,
    ParkingFunction,
};
pub use permutational::{psi, target_tail, tes_t1};
