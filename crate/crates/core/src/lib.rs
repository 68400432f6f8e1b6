//! Exact computation in category crossed products `A ⋊ G` over finite
//! coefficient rings and finite small categories.

pub mod algebra;
pub mod category;
pub mod checklist;
pub mod ideals;
pub mod ring;
pub mod structure;
pub mod system;
