/*
Copyright 2026 The LTL Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include "ltl/common.hpp"
#include "ltl/configuration.hpp"
#include "ltl/convergence.hpp"
#include "ltl/generate.hpp"
#include "ltl/mesh.hpp"
#include "ltl/mesh_io.hpp"
#include "ltl/operators.hpp"
#include "ltl/parallel.hpp"
#include "ltl/surfaces.hpp"
#include "ltl/tangent_lifting.hpp"
