//! Causal explanation inference.
//!
//! From causal atoms (`a causes b`), IS-A atoms and a CNF background theory,
//! derive explanation atoms `a explains g because {conditions}`, reduce them
//! to their weakest condition sets, check them against a scenario, and
//! render them as text, JSON, DOT or a three-part ASP program.
//!
//! ```
//! use causex::model::parse_kb;
//! use causex::pipeline::{Options, Pipeline};
//!
//! let kb = parse_kb("symbol(a). symbol(b). cause(a,b).").unwrap().value;
//! let run = Pipeline::run(kb, &Options::default()).unwrap();
//! let lines: Vec<String> = run.derived().iter().map(|a| a.to_string()).collect();
//! assert_eq!(lines, ["a explains b because {a}"]);
//! ```

pub mod emit;
pub mod error;
pub mod logic;
pub mod model;
pub mod pipeline;
pub mod reduce;
pub mod saturation;
pub mod verify;

pub use error::{Error, Result};
