/* Copyright 2026 The spinsqz Authors
  
   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at
  
        http://www.apache.org/licenses/LICENSE-2.0
  
   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

/* Compiled as C to keep the public header C-clean. */
#include "spinsqz/spinsqz.h"

int sqz_c_smoke(void) {
  sqz_state* s = NULL;
  sqz_qfim q;
  int ok;
  if (sqz_state_coherent(4, 0.0, 0.0, &s) != SQZ_OK) return 0;
  ok = sqz_qfim_compute(s, &q) == SQZ_OK && q.eigenvalues[0] > 3.999 && q.eigenvalues[0] < 4.001;
  sqz_state_free(s);
  return ok;
}
