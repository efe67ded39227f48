//! Output renderers: the ASP program bundle, DOT path graphs and JSON.

mod asp;
mod dot;
mod json;

pub use asp::{clause_rule, emit_asp, AspBundle};
pub use dot::emit_dot;
pub use json::{emit_json, AtomRecord, Status};
