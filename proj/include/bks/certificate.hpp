#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bks/compile.hpp"
#include "bks/generate.hpp"

namespace bks {

inline constexpr int kCertificateFormatVersion = 1;

// A certificate packages everything a third party needs to recheck the
// collapse claim: the scalar symbol tower, the exact vector table, the
// derivation DAG, and the compiled orthogonality instance, as one canonical
// text document. Serialization is deterministic — sorted keys, canonical
// scalar spellings, line-feed newlines — so equal certificates are
// byte-identical and any stored digest can be recomputed from content.
struct Certificate {
  int format_version = kCertificateFormatVersion;
  std::string axis_label;  // "1" | "2" | "3" | "all"
  int max_links = 64;
  std::optional<std::string> target_text;  // user-supplied flank target
  Derivation derivation;
  ContextSet context_set;
  std::vector<SeedReport> seeds;
  // Content digest as stored in the parsed document, and the digest
  // recomputed from the document as received. Serialization always computes
  // a fresh digest; this pair only feeds verification, which demands they
  // agree so that a token change anywhere is tamper-evident even in fields
  // without an independent semantic recheck.
  std::string digest;
  std::string text_digest;
};

// Assembles a certificate from a generation run; compiles the instance.
Certificate make_certificate(GenerateResult gen, const GenerateOptions& opt);

std::string serialize_certificate(const Certificate& c);

// Inverse of serialization. Errors are distinguishable by kind and stable
// message prefix: structural syntax errors carry line/column (ParseError),
// an unsupported version reports "unsupported format version", a dangling
// reference reports "unresolved ... id <n>" naming the id, and a bad scalar
// reports "malformed scalar". Parsing is purely syntactic plus reference
// resolution; mathematical validity is verify_certificate's job.
Certificate parse_certificate(const std::string& text);

struct CertificateCheck {
  VerifyStats stats;
  ContextSet instance;  // freshly recompiled from the derivation
};

// Full recheck: verifies the derivation (goal required), recompiles the
// orthogonality instance and compares it with the stored one, validates the
// frame table and counts, and recomputes the content digest when the
// certificate carries one. Throws ErrorKind::Validate on the first failure.
CertificateCheck verify_certificate(const Certificate& c);

// Point indices of the seed poles inside a compiled instance, in seed order.
std::vector<int> seed_point_indices(const Certificate& c, const ContextSet& cs);

// Textual front-end helpers shared by the command line and the bindings.
// An axis is "1", "2", "3" (one-based) or "all"; a target is three
// comma-separated exact scalar expressions, optionally parenthesized.
// Both throw ErrorKind::Usage on bad input.
int parse_axis_text(const std::string& text);
std::array<FieldElem, 3> parse_target_text(const std::string& text);

}  // namespace bks
