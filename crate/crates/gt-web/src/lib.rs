//! Browser front end: runs one `gt` command line and returns its outcome as JSON.

use wasm_bindgen::prelude::*;

/// Runs `line` as arguments to `gt`; returns `{"code", "stdout", "stderr"}`.
#[wasm_bindgen]
pub fn run_command(line: &str) -> String {
    let out = gt_cli::run(std::iter::once("gt").chain(line.split_whitespace()));
    serde_json::json!({"code": out.code, "stdout": out.stdout, "stderr": out.stderr}).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_a_command() {
        let v: serde_json::Value = serde_json::from_str(&run_command("dims sp4 -1,-1")).unwrap();
        assert_eq!(v["code"], 0);
        assert_eq!(v["stdout"], "5\n");
        let v: serde_json::Value = serde_json::from_str(&run_command("dims gl 0,1")).unwrap();
        assert_eq!(v["code"], 2);
    }
}
