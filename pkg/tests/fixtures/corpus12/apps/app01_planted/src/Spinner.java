package com.example.planted;

import android.animation.ObjectAnimator;

public class Spinner {
    void spin(View target) {
        ObjectAnimator spinner = ObjectAnimator.ofFloat(target, "rotation", 0f, 360f);
        spinner.setDuration(5000);
        spinner.start();
    }
}
