use fixdist_core::concepts::{cantor_shatter_search, AtomLabeling, CantorShatterConfig, ConceptClass};
use fixdist_core::construction::{build_measure, ComplexitySchedule, RateFunction};
use fixdist_core::measures::{CantorMeasure, UniformMeasure};
use fixdist_core::sontag::{rationally_independent_points, shatter_search, SearchConfig};
use fixdist_core::{AtomicMeasure, Concept, Measure};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(value: &T) {
    let text = serde_json::to_string(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value, "{text}");
}

#[test]
fn measures_round_trip() {
    round_trip(&Measure::Atomic(AtomicMeasure::from_pairs(&[(0.1, 0.25), (0.7, 0.75)]).unwrap()));
    round_trip(&Measure::Uniform(UniformMeasure::new(0.0, std::f64::consts::TAU).unwrap()));
    round_trip(&Measure::Cantor(CantorMeasure::new(30).unwrap()));
}

#[test]
fn measure_json_is_tagged() {
    let m: Measure = serde_json::from_str(r#"{"kind": "uniform", "a": 0.0, "b": 2.0}"#).unwrap();
    assert_eq!(m, Measure::uniform(0.0, 2.0).unwrap());
    let bad = serde_json::from_str::<Measure>(r#"{"kind": "uniform", "a": 2.0, "b": 0.0}"#);
    assert!(bad.is_err());
}

#[test]
fn concepts_round_trip() {
    round_trip(&Concept::sontag(12.5).unwrap());
    round_trip(&Concept::intervals(vec![(0.0, 0.25), (0.5, 0.75)]).unwrap());
    round_trip(&Concept::AtomLabels(AtomLabeling::new(vec![1.0, 2.0, 3.0], vec![true, false, true], false).unwrap()));
    round_trip(&ConceptClass::Sontag { w_min: 0.0, w_max: 1e6, alpha: 100.0 });
    round_trip(&ConceptClass::OrderIntervals);
}

#[test]
fn shatter_outcomes_round_trip() {
    let pts = rationally_independent_points(4);
    let o = shatter_search(&pts, &[true, false, true, true], 1e6, 100.0, &SearchConfig::default()).unwrap();
    let text = serde_json::to_string(&o).unwrap();
    let back: fixdist_core::sontag::ShatterOutcome = serde_json::from_str(&text).unwrap();
    assert_eq!(back.labels, o.labels);
    assert_eq!(back.witness_w, o.witness_w);
    assert_eq!(back.status, o.status);
}

#[test]
fn cantor_reports_round_trip() {
    let cfg = CantorShatterConfig::default();
    round_trip(&cantor_shatter_search(1, 5, &[1], &cfg).unwrap());
    round_trip(&cantor_shatter_search(1, 5, &[1, 2], &cfg).unwrap());
}

#[test]
fn schedules_round_trip_and_reject_unknown_keys() {
    let s = ComplexitySchedule::default_instance();
    let text = serde_json::to_string(&s).unwrap();
    let back: ComplexitySchedule = serde_json::from_str(&text).unwrap();
    assert_eq!(build_measure(&back).unwrap().measure(), build_measure(&s).unwrap().measure());
    let custom = ComplexitySchedule::geometric(RateFunction::poly(1.5), 3).unwrap();
    round_trip(custom.rate());
    assert!(serde_json::from_str::<ComplexitySchedule>(r#"{"eps": [0.2], "f": {"kind": "poly", "exponent": 2}, "K": 1, "x": 0}"#).is_err());
}
