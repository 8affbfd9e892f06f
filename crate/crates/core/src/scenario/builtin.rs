//! The four worked examples, shipped as scenario files.

use super::Scenario;

pub const BUILTIN_NAMES: [&str; 4] = ["cubic-omega", "cubic-char3", "quartic-i", "quintic-zeta5"];

const SOURCES: [&str; 4] = [
    include_str!("../../scenarios/cubic-omega.json"),
    include_str!("../../scenarios/cubic-char3.json"),
    include_str!("../../scenarios/quartic-i.json"),
    include_str!("../../scenarios/quintic-zeta5.json"),
];

pub fn builtin(name: &str) -> Option<Scenario> {
    let k = BUILTIN_NAMES.iter().position(|n| *n == name)?;
    Some(Scenario::from_json(SOURCES[k]).expect("built-in scenarios are valid"))
}
