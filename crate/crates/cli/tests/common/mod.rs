#![allow(dead_code)]

use std::path::PathBuf;

use toriq::commands::{self, Command, SliceArgs, SliceFan};
use toriq::fixtures::FIXTURES;

pub const COMMANDS: &[(&str, Command)] = &[
    ("validate", Command::Validate),
    ("hhat", Command::Hhat),
    ("separation", Command::Separation),
    ("tv-quotient", Command::TvQuotient),
    ("tp-quotient", Command::TpQuotient),
    ("image", Command::Image),
    ("diagnose", Command::Diagnose),
];

/// Slice plots with checked-in drawings: name, fixture, fan, normal, level.
pub const SLICES: &[(&str, &str, SliceFan, &str, &str)] = &[
    ("glued_cones_target_x1", "glued_cones", SliceFan::Target, "1,0,0", "1"),
    ("unglued_orbits_source_x1", "unglued_orbits", SliceFan::Source, "1,0,0", "1"),
    ("unglued_orbits_source_empty", "unglued_orbits", SliceFan::Source, "1,0,0", "-1"),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn fixture_text(name: &str) -> &'static str {
    FIXTURES.iter().find(|f| f.name == name).expect("bundled fixture").text
}

/// JSON report and exit code of a command on a bundled fixture.
pub fn json_output(fixture: &str, command: &Command) -> (String, i32) {
    let o = commands::run(command, fixture_text(fixture));
    (o.report.to_json(), o.exit)
}

pub fn slice_args(fan: SliceFan, normal: &str, level: &str) -> Command {
    Command::SlicePlot(SliceArgs {
        normal: commands::parse_normal(normal).unwrap(),
        level: commands::parse_level(level).unwrap(),
        fan,
    })
}

/// Every golden file with its freshly computed contents.
pub fn all_outputs() -> Vec<(PathBuf, String)> {
    let mut out = Vec::new();
    for f in FIXTURES {
        for (name, c) in COMMANDS {
            let (json, _) = json_output(f.name, c);
            out.push((golden_dir().join(f.name).join(format!("{name}.json")), json));
        }
    }
    for (name, fixture, fan, normal, level) in SLICES {
        let o = commands::run(&slice_args(*fan, normal, level), fixture_text(fixture));
        out.push((golden_dir().join("slices").join(format!("{name}.json")), o.report.to_json()));
        out.push((golden_dir().join("slices").join(format!("{name}.svg")), o.svg.expect("slice drawing")));
    }
    out
}

/// Paths whose golden file is missing or differs from the computed output.
pub fn golden_mismatches() -> Vec<PathBuf> {
    all_outputs()
        .into_iter()
        .filter(|(path, text)| std::fs::read_to_string(path).ok().as_deref() != Some(text.as_str()))
        .map(|(path, _)| path)
        .collect()
}
