#pragma once

#include <lcr/label_cover.hpp>

#include <string>

namespace lcr {

auto to_json(const CspInstance & csp) -> Json;
auto to_json(const LcInstance & d) -> Json;

// Parse the documented schemas; atoms in relations are matched against domain labels.
// Throws Error(InvalidInput) on malformed input.
auto csp_from_json(const Json & j) -> CspInstance;
auto lc_from_json(const Json & j) -> LcInstance;

// True for the CSP schema (constraints carry "scope"), false for the LC schema.
// An instance without constraints parses identically either way and is reported as CSP.
auto is_csp_json(const Json & j) -> bool;

auto read_json_file(const std::string & path) -> Json;

// Canonical text: compact, fixed field order.
auto canonical_dump(const Json & j) -> std::string;

// Hex SHA-256 of the canonical text.
auto content_digest(const Json & j) -> std::string;

}
