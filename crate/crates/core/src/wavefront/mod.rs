//! Set-level wave-front bounds for convolutions, products and lattice shifts.

mod cone;
mod set;

pub use cone::{angle_deg, AngularInterval, Cone};
pub use set::{wf_conv_bound, wf_fgsi_conv_bound, wf_member, wf_prod_bound, wf_shift_bound, WFItem, WFSet};
