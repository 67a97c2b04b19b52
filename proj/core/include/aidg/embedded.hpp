// Copyright 2026 The AIDG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AIDG_EMBEDDED_HPP_
#define AIDG_EMBEDDED_HPP_

#include <string_view>

namespace aidg {

// Contents of a file under core/data, e.g. "prompts/aidg2_holder.txt".
// Throws aidg::Error for unknown names.
std::string_view EmbeddedFile(std::string_view relative_path);

}  // namespace aidg

#endif  // AIDG_EMBEDDED_HPP_
