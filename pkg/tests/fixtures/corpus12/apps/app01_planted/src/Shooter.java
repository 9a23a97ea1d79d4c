package com.example.planted;

import android.hardware.Camera;

public class Shooter {
    Camera camera;

    void snap(Camera.PictureCallback jpeg) {
        camera.takePicture(null, null, jpeg);
    }
}
