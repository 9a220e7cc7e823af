use serde::Serialize;
use sha2::{Digest, Sha256};

/// Envelope for every JSON output.
#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: Vec<String>,
    /// `sha256:<hex>` of the command's input.
    pub input_digest: String,
    pub exit: u8,
    pub result: T,
}

pub fn digest(input: &[u8]) -> String {
    let hash = Sha256::digest(input);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl<T: Serialize> RunReport<T> {
    pub fn new(input: &[u8], exit: u8, result: T) -> Self {
        RunReport {
            command: std::env::args().collect(),
            input_digest: digest(input),
            exit,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
