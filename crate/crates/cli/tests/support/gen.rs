use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use smelt_core::ingest::{ParseOptions, RawTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Int,
    Float,
    Bool,
    Str,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub kinds: Vec<Kind>,
}

impl Table {
    pub fn raw(&self) -> RawTable {
        RawTable::from_records("random", Some(self.headers.clone()), self.rows.clone(), &ParseOptions::default())
            .unwrap()
    }

    /// Cells with the empty string read as missing.
    pub fn cells(&self) -> Vec<Vec<Option<String>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|c| (!c.is_empty()).then(|| c.clone())).collect())
            .collect()
    }

    pub fn column_values(&self, c: usize) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r[c].parse::<f64>().ok()).collect()
    }
}

/// A mixed-type table of up to 1000 rows with injected missing cells and,
/// half the time, a few rows copied verbatim.
pub fn random_table(rng: &mut ChaCha8Rng) -> Table {
    let n = rng.gen_range(1..=990);
    let k = rng.gen_range(2..=8);
    let kinds: Vec<Kind> = (0..k)
        .map(|_| *[Kind::Int, Kind::Float, Kind::Float, Kind::Bool, Kind::Str].choose(rng).unwrap())
        .collect();
    let missing: Vec<f64> = (0..k).map(|_| *[0.0, 0.0, 0.05, 0.3, 0.95].choose(rng).unwrap()).collect();
    let int_span: Vec<i64> = (0..k).map(|_| *[3, 50, 5000].choose(rng).unwrap()).collect();
    let cardinality: Vec<u32> = (0..k).map(|_| rng.gen_range(2..60)).collect();

    let mut rows: Vec<Vec<String>> = (0..n)
        .map(|_| {
            (0..k)
                .map(|c| {
                    if rng.gen_bool(missing[c]) {
                        return String::new();
                    }
                    match kinds[c] {
                        Kind::Int => rng.gen_range(-int_span[c]..=int_span[c]).to_string(),
                        Kind::Float => format!("{:.4}", rng.gen_range(-1000.0..1000.0)),
                        Kind::Bool => ["true", "false", "yes", "no"].choose(rng).unwrap().to_string(),
                        Kind::Str => format!("s{}", rng.gen_range(0..cardinality[c])),
                    }
                })
                .collect()
        })
        .collect();
    let mut kinds = kinds;
    let numeric: Vec<usize> = (0..k).filter(|&c| matches!(kinds[c], Kind::Int | Kind::Float)).collect();
    if let (Some(&src), true) = (numeric.choose(rng), rng.gen_bool(0.6)) {
        let slope = rng.gen_range(-3.0..3.0);
        let noise = *[0.0, 1.0, 50.0, 2000.0].choose(rng).unwrap();
        for row in rows.iter_mut() {
            let cell = match row[src].parse::<f64>() {
                Ok(x) => format!("{:.4}", slope * x + rng.gen_range(-1.0..=1.0) * noise + 0.5),
                Err(_) => String::new(),
            };
            row.push(cell);
        }
        kinds.push(Kind::Float);
    }
    let k = kinds.len();
    if rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..=10) {
            let src = rows[rng.gen_range(0..rows.len())].clone();
            let at = rng.gen_range(0..=rows.len());
            rows.insert(at, src);
        }
    }
    Table {
        headers: (0..k).map(|c| format!("c{c}")).collect(),
        rows,
        kinds,
    }
}

/// Single-column tables built from cells that sit near the suppression
/// boundaries: blanks, positive responses and numbers with units.
pub fn boundary_table(rng: &mut ChaCha8Rng) -> Table {
    let alphabets: [&[&str]; 4] = [
        &["", "", "", "Y", "Y", "N"],
        &["", "yes", "true"],
        &["90 min", "2 Seasons", "1 Season", "12 min", "5 kg", "7 lb", "x"],
        &["", "10 min", "15 min", "3 Seasons", "Y"],
    ];
    let alphabet = alphabets.choose(rng).unwrap();
    let n = rng.gen_range(10..200);
    let rows = (0..n).map(|_| vec![alphabet.choose(rng).unwrap().to_string()]).collect();
    Table {
        headers: vec!["v".into()],
        rows,
        kinds: vec![Kind::Str],
    }
}
