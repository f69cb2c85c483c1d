use serde::Serialize;

/// Variable that, when set to `1`, makes reports carry `elapsed_ms = 0`
/// so two runs produce identical JSON.
pub const ENV_ZERO_TIMING: &str = "LAXCOMMA_ZERO_TIMING";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub property: String,
    pub instance: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Record {
    pub fn pass(property: &str, instance: impl Into<String>) -> Record {
        Record { property: property.into(), instance: instance.into(), pass: true, witness: None }
    }

    /// Failures always carry a witness.
    pub fn fail(property: &str, instance: impl Into<String>, witness: impl Into<String>) -> Record {
        Record { property: property.into(), instance: instance.into(), pass: false, witness: Some(witness.into()) }
    }

    pub fn check(property: &str, instance: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Record {
        if ok {
            Record::pass(property, instance)
        } else {
            Record::fail(property, instance, witness())
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub all: usize,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub totals: Totals,
    pub records: Vec<Record>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    /// Sorts by instance, then property, and recomputes the totals.
    pub fn new(suite: &str, mut records: Vec<Record>, elapsed_ms: u64) -> SuiteReport {
        records.sort_by(|a, b| (&a.instance, &a.property).cmp(&(&b.instance, &b.property)));
        let pass = records.iter().filter(|r| r.pass).count();
        let totals = Totals { all: records.len(), pass, fail: records.len() - pass };
        SuiteReport { suite: suite.into(), totals, records, elapsed_ms }
    }

    pub fn passed(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One summary line plus one line per failure.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {}/{} passed, {} failed ({} ms)\n",
            self.suite, self.totals.pass, self.totals.all, self.totals.fail, self.elapsed_ms
        );
        for r in self.failures() {
            out.push_str(&format!("  FAIL {} [{}]: {}\n", r.property, r.instance, r.witness.as_deref().unwrap_or("")));
        }
        out
    }
}
