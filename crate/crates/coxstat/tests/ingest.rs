use coxstat::findstat::{cache_path, fetch_findstat};
use coxstat::ingest::{ingest, Format};
use coxstat_core::elements::{ClassicalGroup, ClassicalType};
use coxstat_core::interplab::{generate_dataset, summarize, BuiltinStatistic};
use coxstat_core::moments::moments_from_polynomial;
use coxstat_core::{ExactPolynomial, Statistic};
use num_rational::BigRational;
use num_traits::One;

fn one_line(w: &[i32]) -> String {
    let parts: Vec<String> = w.iter().map(i32::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn descent_csv(max_n: usize) -> String {
    let mut text = String::from("# statistic: St000021\n");
    for n in 1..=max_n {
        for w in ClassicalGroup::new(ClassicalType::A, n).enumerate().unwrap() {
            text += &format!("{};{}\n", one_line(w.window()), w.des_count());
        }
    }
    text
}

#[test]
fn findstat_export_matches_tally() {
    let dir = tempfile::tempdir().unwrap();
    let path = cache_path(dir.path(), "St000021");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(&path, descent_csv(5)).unwrap();
    let ds = fetch_findstat("St000021", dir.path()).unwrap();
    assert_eq!(ds.name, "St000021");
    for n in 1..=5 {
        let g = ClassicalGroup::new(ClassicalType::A, n);
        assert_eq!(ds.histogram(n as u32).unwrap(), ExactPolynomial::from_u64(&g.tally(Statistic::Des).unwrap()));
    }
}

#[test]
fn summaries_agree_with_moments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("des.csv");
    std::fs::write(&path, descent_csv(6)).unwrap();
    let ds = ingest(&path, Format::FindstatCsv).unwrap();
    for row in summarize(&ds, 6).unwrap() {
        let s = moments_from_polynomial(&ds.histogram(row.n).unwrap(), 6).unwrap();
        assert_eq!(row.mean, s.mean);
        assert_eq!(row.variance, s.variance);
        match (&row.normalized_cumulants, &s.normalized_cumulants) {
            (Some(a), Some(b)) => {
                for (x, y) in a.iter().zip(b) {
                    assert!((x - y).abs() <= 1e-9);
                }
            }
            (None, None) => {}
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn fixed_points_have_unit_variance() {
    let ds = generate_dataset(BuiltinStatistic::FixedPoints, 2..=6).unwrap();
    for row in summarize(&ds, 4).unwrap() {
        assert_eq!(row.mean, BigRational::one(), "n = {}", row.n);
        assert_eq!(row.variance, BigRational::one(), "n = {}", row.n);
    }
}

#[test]
fn wrong_length_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.json");
    std::fs::write(&path, "{\"values\": {\"3\": [0, 1, 1, 2, 1]}}").unwrap();
    assert!(ingest(&path, Format::ValuesJson).is_err());
    std::fs::write(&path, "{\"group\": \"none\", \"values\": {\"3\": [0, 1, 1, 2, 1]}}").unwrap();
    assert!(ingest(&path, Format::ValuesJson).is_ok());
}
