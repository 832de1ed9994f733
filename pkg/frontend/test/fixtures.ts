// Canned API payloads mirroring the service wire format.

import type { EnrichedAnswer } from "../src/types.js";

export const GIN_LAY_SUMMARY =
  "Sure! Here's a simplified summary of those pieces of legislation:\n\n" +
  "1. **Approval Requirement for Producers (Section 82)**: You're not allowed " +
  "to make alcoholic drinks on any property unless you've got official " +
  "permission from the authorities, or you're specifically excused from " +
  "needing this permission according to other parts of the law.\n\n" +
  "2. **Exemption for Personal Consumption (Section 84)**: You don't need to " +
  "get official permission to make alcoholic drinks if you're only making " +
  "them for yourself at home, and you're not making spirits (like vodka, " +
  "rum, etc.).";

export const GIN_ANSWER: EnrichedAnswer = {
  recommendation:
    "Here is a simple gin recipe. Steep juniper berries, coriander seeds, and " +
    "citrus peel in a neutral base spirit for 24 hours, strain, then dilute " +
    "to bottling strength with filtered water. Rest the bottle for a week " +
    "before tasting.",
  pattern: "no_warning",
  alert: {
    has_alerts: true,
    message: "Actions recommended by this answer may have legal ramifications.",
    items: [
      {
        issue: "Home distillation may be prohibited.",
        citations: [
          {
            fragment_id: "gb/finance-no2-act/2023/part/2/chapter/5/section/82/1",
            citation_text:
              "A person may not produce alcoholic products on any premises unless—",
            lay_summary: GIN_LAY_SUMMARY
          },
          {
            fragment_id: "gb/finance-no2-act/2023/part/2/chapter/5/section/84",
            citation_text:
              "For the purposes of section 82(1)(b), a person is exempt from the " +
              "approval requirement if— (a)the person produces alcoholic products " +
              "only for the person's own domestic use, and (b)the alcoholic " +
              "products are not spirits.",
            lay_summary: GIN_LAY_SUMMARY
          }
        ]
      }
    ]
  },
  unresolved_issues: [],
  trace: { stages: [] }
};

export const NO_ISSUES_MESSAGE = "No legal issues have been identified in the prompt.";

export const FOOTBALL_ANSWER: EnrichedAnswer = {
  recommendation:
    "To improve in football, consider the following tips:\n\n" +
    "1. Practice regularly: Dedicate time each week to ball control, passing, " +
    "and shooting.\n2. Focus on fitness: Build stamina and strength with " +
    "steady conditioning work.",
  pattern: "no_warning",
  alert: { has_alerts: false, message: NO_ISSUES_MESSAGE, items: [] },
  unresolved_issues: [],
  trace: { stages: [] }
};

export const NO_SUMMARY_ANSWER: EnrichedAnswer = {
  ...GIN_ANSWER,
  alert: {
    ...GIN_ANSWER.alert,
    items: [
      {
        issue: GIN_ANSWER.alert.items[0].issue,
        citations: GIN_ANSWER.alert.items[0].citations.map((c) => ({
          ...c,
          lay_summary: null
        }))
      }
    ]
  }
};
