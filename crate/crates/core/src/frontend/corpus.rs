/// A bundled example.
#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub file: &'static str,
    pub text: &'static str,
}

macro_rules! entries {
    ($($file:literal),* $(,)?) => {
        &[$(CorpusEntry {
            file: $file,
            text: include_str!(concat!("../../corpus/", $file)),
        }),*]
    };
}

static CORPUS: &[CorpusEntry] = entries![
    "weak_holes.wsc",
    "descent_clash.wsc",
    "gamma_intro.wsc",
    "shared_argument.wsc",
    "loop_back.wsc",
    "loop_self.wsc",
    "constant_clash.wsc",
    "upper_bounds_clash.wsc",
    "intersection_clash.wsc",
    "mutual.wsc",
    "chain_clash.wsc",
    "deep_mismatch.wsc",
    "equations_only.wsc",
];

/// The bundled examples, each with a `# expect:` header.
pub fn corpus() -> &'static [CorpusEntry] {
    CORPUS
}
