"""Reference section titles and the pattern each one is designed to hit.

Forty (pattern, title) pairs covering all nineteen patterns, plus three
titles no pattern may match (they name content that reads nothing like a
review: reproduction steps, desired behavior, first-seen dates).
"""

DESIGNATED_TITLES = [
    ("P1", "Actual/Expected behavior"),
    ("P1", "Actual behaviour after performing these steps"),
    ("P2", "Case description and the observed behavior"),
    ("P2", "What is the current behavior?"),
    ("P3", "Describe the bug in a sentence or two."),
    ("P3", "Describe your question in detail."),
    ("P3", "Describe your suggested feature."),
    ("P4", "What is/are your question(s)?"),
    ("P4", "Ask your question."),
    ("P5", "Problem statement"),
    ("P5", "Tell us about the problem."),
    ("P6", "Problem you are trying to solve"),
    ("P6", "What is the user problem or growth opportunity you want to see solved?"),
    ("P7", "Provide a short description of the feature."),
    ("P7", "Bug - short description"),
    ("P8", "Problem you may be having, or feature you want"),
    ("P8", "Describe the feature you want."),
    ("P8", "Why do you want this feature?"),
    ("P9", "Step 3: feature request"),
    ("P9", "Describe your suggested feature."),
    ("P10", "What feature would you like to see?"),
    ("P10", "What is the need and use case of this feature?"),
    ("P11", "What is this issue about?"),
    ("P11", "What's the issue"),
    ("P12", "What would you like to happen?"),
    ("P12", "Describe what actually happened."),
    ("P13", "What is the problem?"),
    ("P13", "What/User problem"),
    ("P14", "Summary of issue"),
    ("P14", "Bug explanation"),
    ("P15", "Issue/Question"),
    ("P15", "Describe the issue"),
    ("P16", "Why/User benefit"),
    ("P16", "User experience"),
    ("P17", "What is the expected output? what do you see instead?"),
    ("P17", "What did you see instead?"),
    ("P18", "Is your feature request related to a problem? please describe it."),
    ("P18", "Is your feature request related to an issue?"),
    ("P19", "Description"),
    ("P19", "Motivation"),
]

NEGATIVE_TITLES = [
    "Expected behavior",
    "Steps to reproduce",
    "First occurred",
]
