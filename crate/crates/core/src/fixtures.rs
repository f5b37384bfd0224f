//! Reference fixtures: the printed value tables and generated oracle files.

use serde::{Deserialize, Serialize};

use crate::eval::Function;

/// Tables as printed: a header line with the function and the sign of the
/// argument, the a values, then one row per x.
const PAPER_TABLES: [(u8, &str); 6] = [
    (
        4,
        "U +x\n\
a -5 -3.5 -1 1 3.5 5\n\
0 3.052183664350372 -0.000000000000000 0.581368317019118 1.162736634038237 0.333333333333333 0.103354367470066\n\
1 0.579926011661105 -1.557601566142810 0.842203244069839 0.378262434740955 0.048971230815929 0.010659966828235\n\
3 3.202129097812791 1.897186042113549 0.184881790005045 0.017224293634316 0.000610423938072 0.000070950238455\n\
5 1.879976816310843 0.212349954984646 0.004337473181400 0.000161381143270 0.000002208878109 0.000000155227075",
    ),
    (
        5,
        "U -x\n\
a -5 -3.5 -1 1 3.5 5\n\
0 3.052183664350372 -0.000000000000000 0.581368317019118 1.16273663404 0.33333333333 0.10335436747\n\
1 -4.332232266251285 1.557601566142810 -0.195001018223362 3.27078479478 2.19468750736 0.97838806074\n\
3 3.802753160685226 -1.897186042113549 -1.767855400724101 45.73101176423 142.69397188181 125.30190015651\n\
5 -9.615606269532364 -0.212349954984649 -35.754085404247576 3259.12460949910 30297.53050402874 45998.28922772748",
    ),
    (
        6,
        "V +x\n\
a -5 -3.5 -1 1 3.5 5\n\
0 -0.058311457540778 0.265961520267622 -0.656003897333753 0.3280019487 0 1.7220102305\n\
1 0.082766571619165 -0.076762147625440 0.220035086525655 0.9226713556 4.0980162226 16.3011422859\n\
3 -0.072650962016911 0.097154672861824 1.994811204614366 12.9004802412 272.5242458690 2087.6829809173\n\
5 0.183704546768818 1.173350875864019 40.344165108706711 919.3820780818 57864.0209141053 766387.7838412275",
    ),
    (
        7,
        "V -x\n\
a -5 -3.5 -1 1 3.5 5\n\
0 -0.058311457540778 0.265961520267622 -0.656003897333753 0.32800194867 0 1.72201023050\n\
1 -0.011079389291262 -0.076762147625440 -0.950324595068664 0.10670586276 -4.09801622261 0.17760809131\n\
3 -0.061176139925034 0.097154672861824 -0.208616760217021 0.00485888353 -272.52424586904 0.00118211779\n\
5 -0.035916642101972 1.173350875864019 -0.004894314375732 0.00004552478 -57864.02091410524 0.00000258678",
    ),
    (
        8,
        "W +x\n\
a -5 -3 -1 1 3 5\n\
0 0.473478576486605 0.539330386270653 0.731481090245431 0.731481090245431 0.539330386270653 0.473478576486605\n\
1 -0.657520526362908 -0.611126375982879 -0.184115556183355 0.315937643962764 0.101682226485666 0.052572013487910\n\
3 -0.062604004232077 0.636305300554784 -0.053352644054153 0.016773032899024 0.009166528652640 0.001223742332881\n\
5 0.089361847055232 0.437066960213013 -0.570254174032845 0.022807516888135 -0.003844865237560 0.000115773464320",
    ),
    (
        9,
        "W -x\n\
a -5 -3 -1 1 3 5\n\
0 0.473478576486605 0.539330386270653 0.731481090245431 0.731481090245 0.539330386271 0.473478576487\n\
1 0.070610950611453 0.428801301530536 0.950916920458344 1.903689596383 3.001251077335 4.378212848013\n\
3 0.606270877302830 0.177268761402591 -0.757374330077355 6.183176599808 57.210355295947 253.398744868662\n\
5 0.538608396875686 -0.370945283780393 0.180907184885679 -4.359927574948 66.590129609337 2852.835947866653",
    ),
];

/// Absolute tolerance for cells printed as zero.
pub const ZERO_CELL_TOLERANCE: f64 = 1e-13;

/// One printed table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceFixture {
    pub table: u8,
    pub function: Function,
    pub a: f64,
    /// Signed argument.
    pub x: f64,
    pub expected: f64,
    /// Significant digits in the printed cell (0 for a printed zero).
    pub printed_digits: u32,
    pub text: String,
}

impl ReferenceFixture {
    /// Largest absolute deviation the cell tolerates.
    pub fn tolerance(&self) -> f64 {
        if self.expected == 0.0 {
            ZERO_CELL_TOLERANCE
        } else {
            5.0 * 10f64.powi(1 - self.printed_digits as i32) * self.expected.abs()
        }
    }

    pub fn accepts(&self, computed: f64) -> bool {
        (computed - self.expected).abs() <= self.tolerance()
    }
}

/// Count of significant digits in a printed decimal.
pub fn significant_digits(text: &str) -> u32 {
    let digits: String = text.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len() as u32
}

fn parse_table(number: u8, text: &str) -> Vec<ReferenceFixture> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines
        .next()
        .unwrap_or_default()
        .split_whitespace()
        .collect();
    let function = match header.first().copied() {
        Some("U") => Function::U,
        Some("V") => Function::V,
        _ => Function::W,
    };
    let sign = if header.get(1) == Some(&"-x") {
        -1.0
    } else {
        1.0
    };
    let a_values: Vec<f64> = lines
        .next()
        .unwrap_or_default()
        .split_whitespace()
        .skip(1)
        .map(|s| s.parse().expect("embedded a value"))
        .collect();
    let mut out = Vec::new();
    for row in lines {
        let mut cells = row.split_whitespace();
        let x: f64 = cells.next().expect("x cell").parse().expect("embedded x");
        for (cell, &a) in cells.zip(&a_values) {
            let expected: f64 = cell.parse().expect("embedded value");
            out.push(ReferenceFixture {
                table: number,
                function,
                a,
                x: sign * x,
                expected,
                printed_digits: significant_digits(cell),
                text: cell.to_string(),
            });
        }
    }
    out
}

/// All 144 cells of the printed tables, in table/row/column order.
pub fn paper_fixtures() -> Vec<ReferenceFixture> {
    PAPER_TABLES
        .iter()
        .flat_map(|&(n, t)| parse_table(n, t))
        .collect()
}

/// Cells of one table (4 to 9).
pub fn table_fixtures(number: u8) -> Option<Vec<ReferenceFixture>> {
    PAPER_TABLES
        .iter()
        .find(|(n, _)| *n == number)
        .map(|&(n, t)| parse_table(n, t))
}

/// One entry of an oracle file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub function: Function,
    pub a: f64,
    pub x: f64,
    pub value_30_digits: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivative_30_digits: Option<String>,
}

impl OracleRecord {
    pub fn value(&self) -> Option<f64> {
        self.value_30_digits.trim().parse().ok()
    }

    pub fn derivative(&self) -> Option<f64> {
        self.derivative_30_digits.as_deref()?.trim().parse().ok()
    }
}

/// Parses the JSON array written by the reference generator.
pub fn parse_oracle(json: &str) -> serde_json::Result<Vec<OracleRecord>> {
    serde_json::from_str(json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cells_present() {
        let f = paper_fixtures();
        assert_eq!(f.len(), 144);
        for n in 4..=9 {
            assert_eq!(table_fixtures(n).unwrap().len(), 24);
        }
        assert!(table_fixtures(3).is_none());
    }

    #[test]
    fn digit_counts() {
        assert_eq!(significant_digits("3.052183664350372"), 16);
        assert_eq!(significant_digits("0.000000155227075"), 9);
        assert_eq!(significant_digits("-0.000000000000000"), 0);
        assert_eq!(significant_digits("919.3820780818"), 13);
        assert_eq!(significant_digits("0"), 0);
    }

    #[test]
    fn signed_arguments_and_values() {
        let t9 = table_fixtures(9).unwrap();
        let cell = t9.iter().find(|c| c.a == 5.0 && c.x == -5.0).unwrap();
        assert_eq!(cell.expected, 2852.835947866653);
        assert_eq!(cell.function, Function::W);
        let zero = paper_fixtures()
            .into_iter()
            .find(|c| c.table == 4 && c.a == -3.5 && c.x == 0.0)
            .unwrap();
        assert_eq!(zero.expected, 0.0);
        assert_eq!(zero.tolerance(), ZERO_CELL_TOLERANCE);
        for c in paper_fixtures().iter().filter(|c| c.expected != 0.0) {
            assert!((6..=17).contains(&c.printed_digits), "{c:?}");
        }
    }

    #[test]
    fn oracle_schema() {
        let json = r#"[{"function":"U","a":-1,"x":1,"value_30_digits":"0.842203244069838935"}]"#;
        let recs = parse_oracle(json).unwrap();
        assert_eq!(recs[0].function, Function::U);
        assert!((recs[0].value().unwrap() - 0.842_203_244_069_839).abs() < 1e-15);
        assert_eq!(recs[0].derivative(), None);
    }
}
