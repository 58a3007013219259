use std::sync::OnceLock;

use regex::Regex;

fn entity_patterns() -> &'static [Regex; 3] {
    static PATTERNS: OnceLock<[Regex; 3]> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        [
            // URLs first so that '#' or '@' inside a link go with it.
            Regex::new(r"(?i)\b(?:[a-z][a-z0-9+.\-]*://|www\.)\S*").expect("url pattern"),
            Regex::new(r"@\w+").expect("mention pattern"),
            Regex::new(r"#\w*").expect("hashtag pattern"),
        ]
    })
}

/// Removes user mentions, URLs and hashtags (marker and content), then
/// collapses whitespace.
///
/// Matches are replaced by a space rather than deleted so that removal can
/// never splice two fragments into a new match; this keeps the function
/// idempotent.
pub fn clean_tweet(raw: &str) -> String {
    let mut text = raw.to_string();
    for re in entity_patterns() {
        text = re.replace_all(&text, " ").into_owned();
    }
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn removes_all_entity_kinds() {
        assert_eq!(
            clean_tweet("Great game @bob http://t.co/x #sarcasm"),
            "Great game"
        );
        assert_eq!(clean_tweet("see www.example.com/a#b now"), "see now");
        assert_eq!(clean_tweet("HTTPS://T.CO/abc wow"), "wow");
    }

    #[test]
    fn identity_and_total_removal() {
        assert_eq!(clean_tweet("no entities here"), "no entities here");
        assert_eq!(clean_tweet("#sarcasm"), "");
        assert_eq!(clean_tweet("  \t "), "");
    }

    #[test]
    fn no_hash_survives() {
        let out = clean_tweet("#a##b # lone #x#y end#");
        assert!(!out.contains('#'), "{out}");
        assert_eq!(out, "lone end");
    }

    #[test]
    fn emoticons_survive() {
        assert_eq!(clean_tweet("I love mondays :P @boss"), "I love mondays :P");
    }

    proptest! {
        #[test]
        fn idempotent(s in "[a-z#@:/. wh0-9tps]{0,40}") {
            let once = clean_tweet(&s);
            prop_assert_eq!(clean_tweet(&once), once.clone());
            prop_assert!(!once.contains('#'));
        }
    }
}
