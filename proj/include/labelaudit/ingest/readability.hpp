#pragma once

#include <string>

#include "labelaudit/ingest/document.hpp"

namespace labelaudit::ingest {

// Extracts readable text blocks from policy HTML: block-level content
// elements become blocks in document order, script/style/nav/header/footer/
// aside (and head) subtrees are dropped, inline markup is flattened, and
// top-level <li> items are marked as list items. Throws EmptyDocument when
// nothing survives extraction.
CleanDocument extract_readable(const RawDocument& raw,
                               const std::string& policy_id);

CleanDocument extract_readable_html(const std::string& html,
                                    const std::string& policy_id,
                                    const std::string& source_url = "");

}  // namespace labelaudit::ingest
