package com.example.snap;

import android.hardware.Camera;

public class SilentShot {
    Camera camera;

    void capture(Camera.PictureCallback jpeg) {
        camera.takePicture(null, null, jpeg);
    }
}
