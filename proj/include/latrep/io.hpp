#pragma once

#include "latrep/tensor.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace latrep {

using Json = nlohmann::ordered_json;

/// Matrix text format, used repo-wide: first line "rows cols", then
/// row-major entries as "num" or "num/den"; '#' starts a comment.
ExactMatrix read_matrix(std::istream& in);
std::string matrix_text(const ExactMatrix& m);

/// "lattice ell=<p>" header followed by the basis matrix (columns are
/// basis vectors).
Lattice read_lattice(std::istream& in);
std::string lattice_text(const Lattice& l);

/// "form kind=<symmetric|alternating> ell=<p>" header followed by the Gram.
BilinearForm read_form(std::istream& in);
std::string form_text(const BilinearForm& f);

/// "action dim=<m> ngens=<k> ell=<p>" header followed by k matrices.
struct ActionFile {
    GroupAction action;
    Int ell;
};
ActionFile read_action(std::istream& in);
std::string action_text(const GroupAction& a, const Int& ell);

/// Scenario file: "scenario ell=<p> [window=<w>]" then named sections
/// [s_action], [f], [d_action], and optionally [gamma], [h], [window].
struct ScenarioFile {
    TensorScenario scenario;
    std::optional<Lattice> gamma;
    std::optional<BilinearForm> h;
};
ScenarioFile read_scenario(std::istream& in);

Json to_json(const ExactMatrix& m);
Json to_json(const DiscriminantGroup& dg);
Json to_json(const CraigReport& report);
Json to_json(const WellRoundedEvidence& ev);
Json to_json(const ScenarioCheck& check);
Json to_json(const TensorVerdict& verdict);
Json to_json(const ClassificationResult& result);
Json to_json(const PairingSpaceResult& result);

/// Markdown rendering of a report JSON object; never computed separately
/// from the JSON.
std::string json_to_markdown(const Json& j);

}  // namespace latrep
