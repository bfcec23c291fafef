//! Golden-file lock on the documented JSON schema of the Debye bracket
//! series, plus the parse-back round trip.

use debye::brackets::{
    bracket_series_from_dto, bracket_series_to_json, debye_bracket_series, BracketSeriesDto,
};

const GOLDEN: &str = include_str!("golden/debye_bracket_series.json");

#[test]
fn serialization_matches_golden_file() {
    let json = bracket_series_to_json(&debye_bracket_series());
    assert_eq!(json.trim(), GOLDEN.trim());
}

#[test]
fn golden_file_parses_back_to_the_series() {
    let dto: BracketSeriesDto = serde_json::from_str(GOLDEN).unwrap();
    let series = bracket_series_from_dto(&dto).unwrap();
    assert_eq!(series, debye_bracket_series());
}
