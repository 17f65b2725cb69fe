#pragma once

#include "rcheck/ltl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rcheck {

/// SMV text for the composed system with stuttering completion at deadlocks.
/// Variables are renamed `inst_var`; send labels become DEFINEs over current
/// and next values, receive labels latched booleans. The message (`ch` and
/// the data variables) is chosen together with each step and reads `undef`
/// after a stutter step, so no label holds there.
std::string export_smv(const CompiledSystem& sys, const std::vector<PropertySpec>& properties = {});

/// SMV-legal spelling of a source identifier.
std::string smv_ident(const std::string& name);

/// Path of an external checker from RCHECK_SMV_CHECKER, if set and non-empty.
std::optional<std::string> external_checker();

/// Runs `binary file.smv` with a timeout and returns the LTLSPEC verdicts in
/// order of appearance. Throws IoError when the run fails or times out.
std::vector<bool> run_external_checker(const std::string& binary, const std::string& smv, int timeoutSeconds = 120);

} // namespace rcheck
