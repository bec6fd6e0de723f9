use serde::{Deserialize, Serialize};

/// Inputs that identify one verification case.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    pub n: usize,
    pub a: Vec<u32>,
    /// 1-based, empty for constant terms.
    pub indices: Vec<usize>,
    /// Target exponent, for families that are not indexed by a coefficient shape.
    pub b: Option<Vec<i32>>,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub family: String,
    pub params: CaseParams,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub micros: u64,
}

impl VerificationCase {
    pub fn new(family: impl Into<String>, params: CaseParams, lhs: String, rhs: String, micros: u64) -> Self {
        let equal = lhs == rhs;
        VerificationCase {
            family: family.into(),
            params,
            lhs,
            rhs,
            equal,
            micros,
        }
    }

    fn family_rank(&self) -> (usize, u32) {
        const ORDER: [&str; 11] = [
            "dyson", "qdyson", "thm1", "thm2", "thm3", "conj1", "conj2", "conj3", "goodrec", "qdixon", "rothe",
        ];
        if let Some(id) = self.family.strip_prefix("qdixon-id") {
            return (9, id.parse().unwrap_or(u32::MAX));
        }
        let rank = ORDER.iter().position(|f| *f == self.family).unwrap_or(ORDER.len());
        (rank, 0)
    }

    /// Key for the canonical report order.
    pub fn sort_key(&self) -> impl Ord + '_ {
        let p = &self.params;
        (self.family_rank(), p.n, &p.a, &p.indices, &p.b, p.alpha, p.beta)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub tool_version: String,
    pub timestamp: String,
    pub grid: String,
    pub cases: Vec<VerificationCase>,
    pub counts: Counts,
    pub total_micros: u64,
}

impl SweepReport {
    /// Sorts `cases` canonically and fills in the counts.
    pub fn new(grid: String, mut cases: Vec<VerificationCase>, total_micros: u64) -> Self {
        cases.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        let pass = cases.iter().filter(|c| c.equal).count();
        SweepReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            grid,
            counts: Counts {
                pass,
                fail: cases.len() - pass,
            },
            cases,
            total_micros,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.counts.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationCase> {
        self.cases.iter().filter(|c| !c.equal)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(family: &str, a: Vec<u32>, lhs: &str, rhs: &str) -> VerificationCase {
        let params = CaseParams {
            n: a.len(),
            a,
            ..CaseParams::default()
        };
        VerificationCase::new(family, params, lhs.into(), rhs.into(), 3)
    }

    #[test]
    fn equality_is_string_identity() {
        assert!(case("thm1", vec![1, 1], "-1", "-1").equal);
        assert!(!case("thm1", vec![1, 1], "-1", "-1 + 0*q").equal);
    }

    #[test]
    fn counts_and_order() {
        let cases = vec![
            case("rothe", vec![0, 0, 0], "1", "1"),
            case("qdixon-id10", vec![0, 0, 0], "1", "1"),
            case("qdixon-id2", vec![0, 0, 0], "1", "2"),
            case("dyson", vec![2, 1], "3", "3"),
            case("dyson", vec![1, 1], "2", "2"),
        ];
        let r = SweepReport::new("test".into(), cases, 10);
        let order: Vec<_> = r.cases.iter().map(|c| (c.family.as_str(), c.params.a.clone())).collect();
        assert_eq!(
            order,
            vec![
                ("dyson", vec![1, 1]),
                ("dyson", vec![2, 1]),
                ("qdixon-id2", vec![0, 0, 0]),
                ("qdixon-id10", vec![0, 0, 0]),
                ("rothe", vec![0, 0, 0]),
            ]
        );
        assert_eq!(r.counts, Counts { pass: 4, fail: 1 });
        assert!(!r.all_passed());
    }

    #[test]
    fn json_round_trip() {
        let mut c = case("goodrec", vec![1, 2], "0", "0");
        c.params.b = Some(vec![1, -1]);
        c.params.alpha = Some(-2);
        let r = SweepReport::new("g".into(), vec![c], 5);
        assert_eq!(SweepReport::from_json(&r.to_json()).unwrap(), r);
    }
}
