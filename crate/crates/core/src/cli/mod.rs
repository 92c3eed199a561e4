//! Parser, evaluator, configuration and command dispatch.

pub mod config;
pub mod eval;
pub mod parse;
pub mod report;
pub mod run;
pub mod sample;
pub mod selftest;

pub use config::{Config, Format, DB_ENV};
pub use eval::{parse_elem, parse_lie, Env, Term, Value};
pub use parse::{parse, Ast, Op, Pos};
pub use report::{Report, Status};
pub use run::{run, Outcome};
