#ifndef BALLMAP_JSON_IO_HPP
#define BALLMAP_JSON_IO_HPP

#include <string>

#include <ballmap/classes.hpp>
#include <ballmap/extension.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/kernel.hpp>

// JSON forms of the library's value types. Readers reject unknown fields and
// raise ParseError on malformed input.
//
//   HoloMap     {"n": 2, "degree_cap": 8, "terms": [{"out": 0, "idx": [1, 0], "re": 1, "im": 0}, ...]}
//   Func1D      {"builtin": "koebe"} | {"builtin": "mobius-starlike", "params": {"A": -1, "B": 1, "c": [1, 0]}}
//               | {"series": [[0, 0], [1, 0], [re, im], ...]}
//   Kernel      {"mobius": {"A": -1, "B": 1}} | {"generic": "cayley"}
//   SamplePlan  {"radii": 24, "dirs": 200, "rmin": 0.05, "rmax": 0.95, "seed": 24301}

namespace ballmap
{

HoloMap holomap_from_json(const std::string &text);
std::string holomap_to_json(const HoloMap &f);

Func1D func1d_from_json(const std::string &text);
// Callable functions have no JSON form (Unsupported).
std::string func1d_to_json(const Func1D &f);

Kernel kernel_from_json(const std::string &text);
std::string kernel_to_json(const Kernel &k);

SamplePlan sample_plan_from_json(const std::string &text);
std::string sample_plan_to_json(const SamplePlan &p);

std::string verdict_to_json(const Verdict &v, Mode mode, const Kernel &k, const ClassParams &p);
std::string metadata_to_json(const OperatorMetadata &m);

} // namespace ballmap

#endif
