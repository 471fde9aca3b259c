/* The public header must compile as C. */
#include <stdio.h>

#include "ptgauge/ptgauge.h"

int main(void) {
  ptg_params p = {2.0, 0.5, 1.0, -1};
  ptg_settings s;
  ptg_model* m = NULL;
  ptg_gauge_info gi;
  ptg_settings_default(&s);
  if (ptg_model_create(&p, &s, &m) != PTG_OK) return 1;
  if (ptg_gauge_info_get(m, &gi) != PTG_OK) return 1;
  ptg_model_destroy(m);
  printf("gamma %.17g\n", gi.gamma);
  return gi.normalizable ? 0 : 1;
}
