//! Set-valued diagrams on finite categories: limits, colimits, comma
//! categories, pointwise Kan extensions and adjunction certification.

mod adjunction;
mod diagram;
mod kan;
mod limits;
mod solve;

pub use adjunction::{
    certify_adjunction, AdjunctionData, AdjunctionReport, Corpus, Diagrams, HomCategory, IdentityAdjunction, LanAdjunction, Map,
    Obj, RanAdjunction,
};
pub use diagram::{
    coproduct_diagrams, count_maps, enumerate_maps, pushout_copair, pushout_diagrams, DiagramMap, DiagramPushout, SetDiagram,
};
pub use kan::{
    comma_over, comma_under, lan, lan_counit, lan_map, ran, ran_map, ran_unit, ran_with_budget, restrict, CommaCategory, LeftKan,
    RightKan,
};
pub use limits::{colimit, limit, limit_with_budget, Colimit, Limit};
